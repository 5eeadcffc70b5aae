#include <doctest.h>

#include <algorithm>
#include <random>

#include "relad/errors.hpp"
#include "relad/models.hpp"
#include "relad/normalizer.hpp"
#include "relad/oracle.hpp"
#include "testutil.hpp"

using namespace relad;
using testutil::fv;

TEST_SUITE_BEGIN("normalizer");

TEST_CASE("generic normal form: isolated node maps to itself") {
    const ExplicitGraph graph = build_graph(RelationSpec{}, {fv("0"), fv("1")});
    CHECK(generic_normalize(graph, fv("0")) == fv("0"));
    CHECK(generic_normalize(graph, fv("1")) == fv("1"));
    CHECK_THROWS_AS(generic_normalize(graph, fv("00")), NodeNotInDomain);
}

TEST_CASE("generic normal form: a chain collapses to its topologically last node") {
    RelationSpec spec;
    spec.explicit_edges = {{fv("00"), fv("01")}, {fv("01"), fv("10")}};
    const ExplicitGraph graph = build_graph(spec, {fv("00"), fv("01"), fv("10")});
    for (const char* node : {"00", "01", "10"}) {
        CHECK(generic_normalize(graph, fv(node)) == fv("10"));
    }
}

TEST_CASE("generic normal form: a two-cycle condenses to its smaller member") {
    RelationSpec spec;
    spec.explicit_edges = {{fv("01"), fv("10")}, {fv("10"), fv("01")}};
    const ExplicitGraph graph = build_graph(spec, {fv("01"), fv("10")});
    CHECK(generic_normalize(graph, fv("01")) == fv("01"));
    CHECK(generic_normalize(graph, fv("10")) == fv("01"));
}

TEST_CASE("equivalence canonicalization keeps the lowest active coordinate") {
    CHECK(equivalence_normalize({{0, 1}}, fv("01")) == fv("10"));
    CHECK(equivalence_normalize({{0, 1}}, fv("00")) == fv("00"));
    CHECK(equivalence_normalize({{0, 1}, {2, 3}}, fv("0111")) == fv("1010"));
    CHECK_THROWS_AS(equivalence_normalize({{0, 1}, {1, 2}}, fv("000")), OverlappingGroups);
}

TEST_CASE("strongest adversarial form: constant model falls back to the closure minimum") {
    RelationSpec spec;
    spec.equivalence_groups = {{0, 1}};
    const ExplicitGraph graph = build_graph(spec, testutil::full_cube(2));
    const LinearModel constant(std::vector<double>{0.0, 0.0}, 0.25);
    // Closure of 01 is {01, 10, 11}; all losses tie.
    CHECK(strongest_adv_normalize(constant, graph, fv("01")) == fv("01"));
    CHECK(strongest_adv_normalize(constant, graph, fv("11")) == fv("01"));
}

TEST_CASE("strongest adversarial form picks the loss maximizer across the component") {
    RelationSpec two_cycle;
    two_cycle.explicit_edges = {{fv("0"), fv("1")}, {fv("1"), fv("0")}};
    const ExplicitGraph graph = build_graph(two_cycle, {fv("0"), fv("1")});
    const LinearModel model(std::vector<double>{1.0}, -0.5);
    REQUIRE(model.nll_loss(fv("1"), model.predict(fv("0"))) >
            model.nll_loss(fv("0"), model.predict(fv("0"))));
    CHECK(strongest_adv_normalize(model, graph, fv("0")) == fv("1"));
    CHECK(strongest_adv_normalize(model, graph, fv("1")) == fv("1"));
}

TEST_CASE("strongest adversarial form on a reversible 3-cycle finds the unique maximizer") {
    RelationSpec cycle;
    cycle.explicit_edges = {{fv("00"), fv("01")}, {fv("01"), fv("10")}, {fv("10"), fv("00")}};
    const ExplicitGraph graph = build_graph(cycle, {fv("00"), fv("01"), fv("10")});
    REQUIRE(is_reversible(graph));
    const LinearModel model(std::vector<double>{0.7, 0.3}, -0.4);

    // Independent argmax over the closure with the same reference label.
    const int reference = model.predict(fv("00"));
    FeatureVector expected = fv("00");
    double best = model.nll_loss(expected, reference);
    for (const FeatureVector& z : closure(graph, fv("00"))) {
        const double loss = model.nll_loss(z, reference);
        if (loss > best) {
            best = loss;
            expected = z;
        }
    }
    REQUIRE(expected == fv("10"));
    for (const char* node : {"00", "01", "10"}) {
        CHECK(strongest_adv_normalize(model, graph, fv(node)) == expected);
    }
}

TEST_CASE("strongest adversarial form requires reversibility") {
    RelationSpec additive;
    additive.additive = {0};
    const ExplicitGraph graph = build_graph(additive, testutil::full_cube(1));
    const LinearModel model(std::vector<double>{1.0}, 0.0);
    CHECK_THROWS_AS(strongest_adv_normalize(model, graph, fv("0")), NotReversible);
}

TEST_CASE("normalizers are idempotent and stay inside the weak component") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const ExplicitGraph graph = testutil::random_graph(12, 0.18, rng);
        const WccIndex components = wcc(graph);
        const std::vector<int> forms = generic_normal_form_ids(graph);
        for (std::size_t v = 0; v < graph.node_count(); ++v) {
            const FeatureVector nx = graph.node(forms[v]);
            // Idempotent: the form of the form is itself.
            CHECK(graph.node(forms[static_cast<std::size_t>(graph.require_index(nx))]) == nx);
            // Membership: same weak component.
            CHECK(components.component_of[v] ==
                  components.component_of[static_cast<std::size_t>(graph.require_index(nx))]);
        }
    }

    const std::vector<std::vector<std::size_t>> groups{{0, 2}, {1, 3}};
    std::mt19937_64 rng2(321);
    for (int trial = 0; trial < 50; ++trial) {
        const FeatureVector x = testutil::random_vector(4, rng2);
        const FeatureVector once = equivalence_normalize(groups, x);
        CHECK(equivalence_normalize(groups, once) == once);
    }
}

TEST_CASE("generic form is constant per weak component, so predictions are robust") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 30; ++trial) {
        const ExplicitGraph graph = testutil::random_graph(10, 0.2, rng);
        const WccIndex components = wcc(graph);
        const std::vector<int> forms = generic_normal_form_ids(graph);
        for (std::size_t u = 0; u < graph.node_count(); ++u) {
            for (std::size_t v = 0; v < graph.node_count(); ++v) {
                if (components.component_of[u] == components.component_of[v]) {
                    CHECK(forms[u] == forms[v]);
                }
            }
        }

        // Any labeling of normal forms is robust everywhere once composed.
        std::vector<int> random_labels(graph.node_count());
        for (int& l : random_labels) l = static_cast<int>(rng() % 3);
        const LabelFn composed = [&](const FeatureVector& x) {
            const int id = graph.require_index(x);
            return random_labels[static_cast<std::size_t>(forms[static_cast<std::size_t>(id)])];
        };
        for (std::size_t v = 0; v < graph.node_count(); ++v) {
            CHECK(is_robust(composed, graph, graph.node(static_cast<int>(v))));
        }
    }
}

TEST_CASE("reversible relations normalize the whole closure to one form") {
    RelationSpec spec;
    spec.equivalence_groups = {{0, 1, 2}};
    const ExplicitGraph graph = build_graph(spec, testutil::full_cube(3));
    REQUIRE(is_reversible(graph));
    const std::vector<int> forms = generic_normal_form_ids(graph);
    for (const FeatureVector& x : graph.nodes()) {
        const int fx = forms[static_cast<std::size_t>(graph.require_index(x))];
        for (const FeatureVector& z : closure(graph, x)) {
            CHECK(forms[static_cast<std::size_t>(graph.require_index(z))] == fx);
        }
    }
}

TEST_CASE("spec-built normalizer matches the generic algorithm on an additive cube") {
    RelationSpec additive;
    additive.additive = {0, 2};
    const ExplicitGraph graph = build_graph(additive, testutil::full_cube(3));
    const Normalizer saturate = Normalizer::for_spec(additive);
    for (const FeatureVector& x : graph.nodes()) {
        CHECK(saturate(x) == generic_normalize(graph, x));
    }
}

TEST_CASE("identity normalizer and empty spec leave inputs untouched") {
    const Normalizer id = Normalizer::identity();
    CHECK(id.is_identity());
    CHECK(id(fv("0101")) == fv("0101"));
    const Normalizer empty = Normalizer::for_spec(RelationSpec{});
    CHECK(empty.is_identity());
}

TEST_CASE("normalized classifier predicts on the canonical form") {
    const std::vector<std::vector<std::size_t>> groups{{0, 1}};
    const Normalizer n = Normalizer::equivalence(groups);
    const LinearModel model(std::vector<double>{1.0, -1.0}, -0.5);
    const NormalizedClassifier pipeline(model, n);
    // 01 canonicalizes to 10, which scores positive.
    CHECK(model.predict(fv("01")) == 0);
    CHECK(pipeline.predict(fv("01")) == 1);
    CHECK(pipeline.predict(fv("10")) == 1);
    CHECK(pipeline.nll_loss(fv("01"), 1) == doctest::Approx(model.nll_loss(fv("10"), 1)));
}

TEST_SUITE_END();
