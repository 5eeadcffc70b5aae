#include "relad/normalizer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "relad/errors.hpp"

namespace relad {

namespace {

// Condensation of the graph: scc ids plus, per scc, the lexicographically
// smallest member (its representative) and the deduplicated scc adjacency.
struct Condensation {
    std::vector<int> scc_of;                  // node id -> scc id
    std::vector<int> representative;          // scc id -> node id of lex-min member
    std::vector<std::vector<int>> adjacency;  // scc id -> successor scc ids
};

Condensation condense(const ExplicitGraph& graph) {
    Condensation c;
    c.scc_of = strongly_connected_components(graph);
    int scc_count = 0;
    for (int id : c.scc_of) scc_count = std::max(scc_count, id + 1);

    c.representative.assign(static_cast<std::size_t>(scc_count), -1);
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        int s = c.scc_of[v];
        int& rep = c.representative[static_cast<std::size_t>(s)];
        if (rep < 0 || graph.node(static_cast<int>(v)) < graph.node(rep)) {
            rep = static_cast<int>(v);
        }
    }

    std::vector<std::set<int>> succ(static_cast<std::size_t>(scc_count));
    for (std::size_t u = 0; u < graph.node_count(); ++u) {
        for (int v : graph.successors(static_cast<int>(u))) {
            int su = c.scc_of[u];
            int sv = c.scc_of[static_cast<std::size_t>(v)];
            if (su != sv) succ[static_cast<std::size_t>(su)].insert(sv);
        }
    }
    c.adjacency.resize(static_cast<std::size_t>(scc_count));
    for (std::size_t s = 0; s < succ.size(); ++s) {
        std::vector<int> ids(succ[s].begin(), succ[s].end());
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return graph.node(c.representative[static_cast<std::size_t>(a)]) <
                   graph.node(c.representative[static_cast<std::size_t>(b)]);
        });
        c.adjacency[s] = std::move(ids);
    }
    return c;
}

}  // namespace

std::vector<int> generic_normal_form_ids(const ExplicitGraph& graph) {
    const Condensation cond = condense(graph);
    const WccIndex components = wcc(graph);

    std::vector<int> form_of(graph.node_count(), -1);
    for (std::size_t comp = 0; comp < components.members.size(); ++comp) {
        const std::vector<int>& member_nodes = components.members[comp];

        // Condensed nodes of this weak component, roots in lexicographic
        // order of their representatives.
        std::set<int> sccs;
        for (int v : member_nodes) sccs.insert(cond.scc_of[static_cast<std::size_t>(v)]);
        std::vector<int> roots(sccs.begin(), sccs.end());
        std::sort(roots.begin(), roots.end(), [&](int a, int b) {
            return graph.node(cond.representative[static_cast<std::size_t>(a)]) <
                   graph.node(cond.representative[static_cast<std::size_t>(b)]);
        });

        // Depth-first search; the first condensed node to close is a sink of
        // the condensation and fills the last topological slot.
        int first_finished = -1;
        std::map<int, bool> visited;
        struct Frame {
            int scc;
            std::size_t child = 0;
        };
        std::vector<Frame> stack;
        for (int root : roots) {
            if (visited.count(root)) continue;
            visited[root] = true;
            stack.push_back({root});
            while (!stack.empty() && first_finished < 0) {
                Frame& fr = stack.back();
                const auto& succ = cond.adjacency[static_cast<std::size_t>(fr.scc)];
                if (fr.child < succ.size()) {
                    int next = succ[fr.child++];
                    if (!visited.count(next)) {
                        visited[next] = true;
                        stack.push_back({next});
                    }
                } else {
                    first_finished = fr.scc;
                }
            }
            if (first_finished >= 0) break;
        }

        const int form = cond.representative[static_cast<std::size_t>(first_finished)];
        for (int v : member_nodes) form_of[static_cast<std::size_t>(v)] = form;
    }
    return form_of;
}

FeatureVector generic_normalize(const ExplicitGraph& graph, const FeatureVector& x) {
    const int id = graph.require_index(x);
    const std::vector<int> form_of = generic_normal_form_ids(graph);
    return graph.node(form_of[static_cast<std::size_t>(id)]);
}

FeatureVector equivalence_normalize(const std::vector<std::vector<std::size_t>>& groups,
                                    const FeatureVector& x) {
    RelationSpec spec;
    spec.equivalence_groups = groups;
    spec.validate(x.dimension());

    FeatureVector out = x;
    for (const auto& group : groups) {
        bool any = false;
        for (std::size_t id : group) any = any || x.get(id);
        std::size_t lowest = *std::min_element(group.begin(), group.end());
        for (std::size_t id : group) out.set(id, any && id == lowest);
    }
    return out;
}

namespace {

// Forms for the strongest-adversarial normalizer, one per weak component.
std::vector<int> strongest_adv_form_ids(const Classifier& f, const ExplicitGraph& graph) {
    if (!is_reversible(graph)) {
        throw NotReversible("strongest-adversarial normal form needs a reversible relation");
    }
    const WccIndex components = wcc(graph);
    std::vector<int> form_of(graph.node_count(), -1);
    for (const std::vector<int>& member_nodes : components.members) {
        // Reversibility makes the component strongly connected, so the
        // closure of every member is the whole component.
        int lex_min = member_nodes.front();
        for (int v : member_nodes) {
            if (graph.node(v) < graph.node(lex_min)) lex_min = v;
        }
        const int reference = f.predict(graph.node(lex_min));

        int best = -1;
        double best_loss = 0.0;
        for (int v : member_nodes) {
            const double loss = f.nll_loss(graph.node(v), reference);
            if (best < 0 || loss > best_loss ||
                (loss == best_loss && graph.node(v) < graph.node(best))) {
                best = v;
                best_loss = loss;
            }
        }
        for (int v : member_nodes) form_of[static_cast<std::size_t>(v)] = best;
    }
    return form_of;
}

}  // namespace

FeatureVector strongest_adv_normalize(const Classifier& f, const ExplicitGraph& graph,
                                      const FeatureVector& x) {
    const int id = graph.require_index(x);
    const std::vector<int> form_of = strongest_adv_form_ids(f, graph);
    return graph.node(form_of[static_cast<std::size_t>(id)]);
}

// ---------------------------------------------------------------------------
// Normalizer
// ---------------------------------------------------------------------------

Normalizer Normalizer::identity() { return Normalizer{}; }

Normalizer Normalizer::equivalence(std::vector<std::vector<std::size_t>> groups) {
    RelationSpec spec;
    spec.equivalence_groups = groups;
    spec.validate();
    Normalizer n;
    if (!groups.empty()) n.steps_.push_back(EquivalenceStep{std::move(groups)});
    return n;
}

Normalizer Normalizer::additive_saturation(std::vector<std::size_t> flippable) {
    Normalizer n;
    if (!flippable.empty()) n.steps_.push_back(AdditiveStep{std::move(flippable)});
    return n;
}

Normalizer Normalizer::generic_graph(ExplicitGraph graph) {
    GraphStep step;
    step.form_of = generic_normal_form_ids(graph);
    step.graph = std::make_shared<const ExplicitGraph>(std::move(graph));
    step.strict = true;
    Normalizer n;
    n.steps_.push_back(std::move(step));
    return n;
}

Normalizer Normalizer::strongest_adv(std::shared_ptr<const Classifier> f,
                                     ExplicitGraph graph) {
    StrongestAdvStep step;
    step.form_of = strongest_adv_form_ids(*f, graph);
    step.model = std::move(f);
    step.graph = std::make_shared<const ExplicitGraph>(std::move(graph));
    Normalizer n;
    n.steps_.push_back(std::move(step));
    return n;
}

Normalizer Normalizer::for_spec(const RelationSpec& spec,
                                const std::vector<FeatureVector>& domain) {
    if (spec.hue_shift) {
        throw HueUnsupported("hue inputs are normalized by the hue module");
    }
    spec.validate();
    Normalizer n;
    if (!spec.equivalence_groups.empty()) {
        n.steps_.push_back(EquivalenceStep{spec.equivalence_groups});
    }
    if (!spec.additive.empty()) {
        n.steps_.push_back(AdditiveStep{spec.additive});
    }
    if (!spec.explicit_edges.empty()) {
        std::set<FeatureVector> nodes(domain.begin(), domain.end());
        for (const auto& [from, to] : spec.explicit_edges) {
            nodes.insert(from);
            nodes.insert(to);
        }
        RelationSpec edges_only;
        edges_only.explicit_edges = spec.explicit_edges;
        ExplicitGraph graph =
            build_graph(edges_only, std::vector<FeatureVector>(nodes.begin(), nodes.end()));
        GraphStep step;
        step.form_of = generic_normal_form_ids(graph);
        step.graph = std::make_shared<const ExplicitGraph>(std::move(graph));
        step.strict = false;
        n.steps_.push_back(std::move(step));
    }
    return n;
}

FeatureVector Normalizer::operator()(const FeatureVector& x) const {
    FeatureVector out = x;
    for (const Step& step : steps_) {
        if (const auto* eq = std::get_if<EquivalenceStep>(&step)) {
            out = equivalence_normalize(eq->groups, out);
        } else if (const auto* add = std::get_if<AdditiveStep>(&step)) {
            for (std::size_t id : add->flippable) {
                if (id < out.dimension()) out.set(id, true);
            }
        } else if (const auto* gr = std::get_if<GraphStep>(&step)) {
            int id = gr->graph->index_of(out);
            if (id >= 0) {
                out = gr->graph->node(gr->form_of[static_cast<std::size_t>(id)]);
            } else if (gr->strict) {
                throw NodeNotInDomain("input not in normalizer domain: " + out.to_string());
            }
        } else if (const auto* sa = std::get_if<StrongestAdvStep>(&step)) {
            int id = sa->graph->require_index(out);
            out = sa->graph->node(sa->form_of[static_cast<std::size_t>(id)]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// NormalizedClassifier
// ---------------------------------------------------------------------------

FeatureVector NormalizedClassifier::normalized(std::span<const double> x) const {
    FeatureVector bits(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 1.0) {
            bits.set(i, true);
        } else if (x[i] != 0.0) {
            throw Error("normalize-then-predict expects binary inputs, got " +
                        std::to_string(x[i]));
        }
    }
    return normalizer_(bits);
}

std::vector<double> NormalizedClassifier::log_probs(std::span<const double> x) const {
    const std::vector<double> xs = normalized(x).to_reals();
    return inner_.log_probs(xs);
}

std::vector<double> NormalizedClassifier::input_gradient(std::span<const double> x,
                                                         int label) const {
    const std::vector<double> xs = normalized(x).to_reals();
    return inner_.input_gradient(xs, label);
}

}  // namespace relad
