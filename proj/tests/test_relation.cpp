#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "relad/errors.hpp"
#include "relad/relation.hpp"
#include "testutil.hpp"

using namespace relad;
using testutil::fv;

namespace {

std::set<FeatureVector> as_set(const std::vector<FeatureVector>& xs) {
    return {xs.begin(), xs.end()};
}

std::set<std::pair<std::string, std::string>> edge_set(const ExplicitGraph& graph) {
    std::set<std::pair<std::string, std::string>> edges;
    for (std::size_t u = 0; u < graph.node_count(); ++u) {
        for (int v : graph.successors(static_cast<int>(u))) {
            edges.emplace(graph.node(static_cast<int>(u)).to_string(),
                          graph.node(v).to_string());
        }
    }
    return edges;
}

}  // namespace

TEST_SUITE_BEGIN("relation");

TEST_CASE("empty spec over two nodes gives two isolated nodes") {
    const std::vector<FeatureVector> domain{fv("0"), fv("1")};
    const ExplicitGraph graph = build_graph(RelationSpec{}, domain);
    CHECK(graph.node_count() == 2);
    CHECK(edge_set(graph).empty());
}

TEST_CASE("explicit edges build the path graph directly") {
    RelationSpec spec;
    spec.explicit_edges = {{fv("00"), fv("01")}, {fv("01"), fv("10")}};
    const ExplicitGraph graph = build_graph(spec, {fv("00"), fv("01"), fv("10")});
    CHECK(edge_set(graph) ==
          std::set<std::pair<std::string, std::string>>{{"00", "01"}, {"01", "10"}});
}

TEST_CASE("additive edges over the 2-cube match independent flip enumeration") {
    RelationSpec spec;
    spec.additive = {0, 1};
    const std::vector<FeatureVector> domain = testutil::full_cube(2);
    const ExplicitGraph graph = build_graph(spec, domain);

    // Oracle: every single-bit 0 -> 1 flip between enumerated vectors.
    std::set<std::pair<std::string, std::string>> expected;
    for (const FeatureVector& x : domain) {
        for (std::size_t i = 0; i < 2; ++i) {
            if (!x.get(i)) {
                FeatureVector z = x;
                z.set(i, true);
                expected.emplace(x.to_string(), z.to_string());
            }
        }
    }
    CHECK(edge_set(graph) == expected);
    CHECK(expected == std::set<std::pair<std::string, std::string>>{
                          {"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}});
}

TEST_CASE("build_graph refuses hue specs and oversized domains") {
    RelationSpec hue;
    hue.hue_shift = true;
    CHECK_THROWS_AS(build_graph(hue, {fv("0")}), HueUnsupported);
    CHECK_THROWS_AS(build_graph(RelationSpec{}, testutil::full_cube(3), 7), DomainTooLarge);
}

TEST_CASE("additive atomic moves flip one eligible bit at a time") {
    RelationSpec spec;
    spec.additive = {0, 1};
    CHECK(as_set(atomic_moves(spec, fv("00"))) == as_set({fv("01"), fv("10")}));
    CHECK(atomic_moves(spec, fv("11")).empty());
}

TEST_CASE("equivalence atomic moves preserve the group OR") {
    RelationSpec spec;
    spec.equivalence_groups = {{0, 1, 2}};
    // One active member: relocations and single additions; 111 needs two moves.
    CHECK(as_set(atomic_moves(spec, fv("100"))) ==
          as_set({fv("010"), fv("001"), fv("110"), fv("101")}));
    // Entirely zero group: the OR would change, so no moves at all.
    CHECK(atomic_moves(spec, fv("000")).empty());
    // Two active members: single additions and single removals.
    CHECK(as_set(atomic_moves(spec, fv("110"))) ==
          as_set({fv("111"), fv("010"), fv("100")}));
}

TEST_CASE("closure is reflexive and follows chains") {
    RelationSpec spec;
    spec.explicit_edges = {{fv("00"), fv("01")}, {fv("01"), fv("10")}};
    const ExplicitGraph graph = build_graph(spec, {fv("00"), fv("01"), fv("10"), fv("11")});
    CHECK(as_set(closure(graph, fv("11"))) == as_set({fv("11")}));
    CHECK(as_set(closure(graph, fv("00"))) == as_set({fv("00"), fv("01"), fv("10")}));
    CHECK_THROWS_AS(closure(graph, fv("0000")), NodeNotInDomain);
}

TEST_CASE("closure of an equivalence pair reaches every same-OR configuration") {
    RelationSpec spec;
    spec.equivalence_groups = {{0, 1}};
    const ExplicitGraph graph = build_graph(spec, testutil::full_cube(2));
    CHECK(as_set(closure(graph, fv("01"))) == as_set({fv("01"), fv("10"), fv("11")}));
}

TEST_CASE("wcc splits isolated nodes and joins directed fans") {
    const std::vector<FeatureVector> domain = testutil::full_cube(2);
    const WccIndex isolated = wcc(build_graph(RelationSpec{}, domain));
    CHECK(isolated.component_count() == 4);

    RelationSpec two_pairs;
    two_pairs.explicit_edges = {{fv("00"), fv("01")}, {fv("10"), fv("11")}};
    const WccIndex pairs = wcc(build_graph(two_pairs, domain));
    CHECK(pairs.component_count() == 2);
    CHECK(pairs.component_of[0] == pairs.component_of[1]);
    CHECK(pairs.component_of[2] == pairs.component_of[3]);
    CHECK(pairs.component_of[0] != pairs.component_of[2]);

    // One-way fan x -> z1, x -> z2 still forms a single weak component.
    RelationSpec fan;
    fan.explicit_edges = {{fv("00"), fv("01")}, {fv("00"), fv("10")}};
    const WccIndex fanned = wcc(build_graph(fan, {fv("00"), fv("01"), fv("10")}));
    CHECK(fanned.component_count() == 1);
    CHECK_FALSE(fanned.strongly_connected[0]);
}

TEST_CASE("reversibility matches the strong-connectivity criterion") {
    const std::vector<FeatureVector> domain = testutil::full_cube(2);
    CHECK(is_reversible(build_graph(RelationSpec{}, domain)));

    RelationSpec equivalence;
    equivalence.equivalence_groups = {{0, 1}};
    CHECK(is_reversible(build_graph(equivalence, domain)));

    RelationSpec additive;
    additive.additive = {0};
    CHECK_FALSE(is_reversible(build_graph(additive, domain)));
}

TEST_CASE("closure is transitive and monotone under union") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 25; ++trial) {
        const ExplicitGraph graph = testutil::random_graph(8, 0.2, rng);

        for (std::size_t u = 0; u < graph.node_count(); ++u) {
            const std::vector<FeatureVector> cl_u = closure(graph, graph.node(static_cast<int>(u)));
            CHECK(std::binary_search(cl_u.begin(), cl_u.end(), graph.node(static_cast<int>(u))));
            for (const FeatureVector& z : cl_u) {
                for (const FeatureVector& w : closure(graph, z)) {
                    CHECK(std::binary_search(cl_u.begin(), cl_u.end(), w));
                }
            }
        }
    }

    // Union of an explicit chain with an additive part covers both closures.
    RelationSpec chain;
    chain.explicit_edges = {{fv("00"), fv("11")}};
    RelationSpec additive;
    additive.additive = {1};
    const RelationSpec both = RelationSpec::union_of(chain, additive);
    const std::vector<FeatureVector> domain = testutil::full_cube(2);
    const ExplicitGraph g_chain = build_graph(chain, domain);
    const ExplicitGraph g_add = build_graph(additive, domain);
    const ExplicitGraph g_union = build_graph(both, domain);
    for (const FeatureVector& x : domain) {
        const auto united = as_set(closure(g_union, x));
        for (const FeatureVector& z : closure(g_chain, x)) CHECK(united.count(z) == 1);
        for (const FeatureVector& z : closure(g_add, x)) CHECK(united.count(z) == 1);
    }
}

TEST_CASE("wcc ids are invariant under edge reversal") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const ExplicitGraph graph = testutil::random_graph(10, 0.15, rng);
        const WccIndex forward = wcc(graph);
        const WccIndex backward = wcc(graph.reversed());
        REQUIRE(forward.component_count() == backward.component_count());
        for (std::size_t u = 0; u < graph.node_count(); ++u) {
            for (std::size_t v = 0; v < graph.node_count(); ++v) {
                CHECK((forward.component_of[u] == forward.component_of[v]) ==
                      (backward.component_of[u] == backward.component_of[v]));
            }
        }
    }
}

TEST_CASE("equivalence closures are symmetric on sampled pairs") {
    RelationSpec spec;
    spec.equivalence_groups = {{0, 1, 2}, {3, 4}};
    const ExplicitGraph graph = build_graph(spec, testutil::full_cube(5));
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const FeatureVector x = testutil::random_vector(5, rng);
        const std::vector<FeatureVector> cl = closure(graph, x);
        const FeatureVector& z = cl[rng() % cl.size()];
        const std::vector<FeatureVector> back = closure(graph, z);
        CHECK(std::binary_search(back.begin(), back.end(), x));
    }
}

TEST_CASE("overlapping equivalence groups are rejected") {
    RelationSpec spec;
    spec.equivalence_groups = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(spec.validate(), OverlappingGroups);
}

TEST_SUITE_END();
