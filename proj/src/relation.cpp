#include "relad/relation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "relad/errors.hpp"

namespace relad {

namespace {

// Sorts node ids by the lexicographic order of the node vectors they name.
void sort_by_node_order(std::vector<int>& ids, const std::vector<FeatureVector>& nodes) {
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        return nodes[static_cast<std::size_t>(a)] < nodes[static_cast<std::size_t>(b)];
    });
}

void append_equivalence_moves(const std::vector<std::size_t>& group,
                              const FeatureVector& x,
                              std::vector<FeatureVector>& out) {
    std::vector<std::size_t> ones;
    std::vector<std::size_t> zeros;
    for (std::size_t id : group) {
        (x.get(id) ? ones : zeros).push_back(id);
    }
    if (ones.empty()) return;  // OR must stay 0: no admissible edit

    // Set an inactive member; the group OR stays 1.
    for (std::size_t j : zeros) {
        FeatureVector z = x;
        z.set(j, true);
        out.push_back(z);
    }
    if (ones.size() >= 2) {
        // Clear an active member while another keeps the OR at 1.
        for (std::size_t i : ones) {
            FeatureVector z = x;
            z.set(i, false);
            out.push_back(z);
        }
    } else {
        // Relocate the single active member within the group.
        for (std::size_t j : zeros) {
            FeatureVector z = x;
            z.set(ones[0], false);
            z.set(j, true);
            out.push_back(z);
        }
    }
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }

    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(b)] = a;
    }
};

}  // namespace

bool RelationSpec::empty() const {
    return explicit_edges.empty() && additive.empty() && equivalence_groups.empty() &&
           !hue_shift;
}

void RelationSpec::validate(std::optional<std::size_t> dimension) const {
    std::set<std::size_t> seen;
    for (const auto& group : equivalence_groups) {
        if (group.size() < 2) {
            throw InvalidConfig("equivalence group must have at least 2 members");
        }
        for (std::size_t id : group) {
            if (!seen.insert(id).second) {
                throw OverlappingGroups("feature id " + std::to_string(id) +
                                        " appears in more than one equivalence group");
            }
            if (dimension && id >= *dimension) {
                throw DimensionMismatch("equivalence feature id out of range: " +
                                        std::to_string(id));
            }
        }
    }
    for (std::size_t id : additive) {
        if (dimension && id >= *dimension) {
            throw DimensionMismatch("additive feature id out of range: " + std::to_string(id));
        }
    }
    if (dimension) {
        for (const auto& [from, to] : explicit_edges) {
            if (from.dimension() != *dimension || to.dimension() != *dimension) {
                throw DimensionMismatch("explicit edge endpoint dimension mismatch");
            }
        }
    }
}

std::vector<std::size_t> RelationSpec::coordinate_support() const {
    std::set<std::size_t> support(additive.begin(), additive.end());
    for (const auto& group : equivalence_groups) {
        support.insert(group.begin(), group.end());
    }
    for (const auto& [from, to] : explicit_edges) {
        for (std::size_t i = 0; i < from.dimension() && i < to.dimension(); ++i) {
            if (from.get(i) != to.get(i)) support.insert(i);
        }
    }
    return {support.begin(), support.end()};
}

RelationSpec RelationSpec::union_of(const RelationSpec& a, const RelationSpec& b) {
    RelationSpec u = a;
    u.explicit_edges.insert(u.explicit_edges.end(), b.explicit_edges.begin(),
                            b.explicit_edges.end());
    u.additive.insert(u.additive.end(), b.additive.begin(), b.additive.end());
    std::sort(u.additive.begin(), u.additive.end());
    u.additive.erase(std::unique(u.additive.begin(), u.additive.end()), u.additive.end());
    u.equivalence_groups.insert(u.equivalence_groups.end(), b.equivalence_groups.begin(),
                                b.equivalence_groups.end());
    u.hue_shift = a.hue_shift || b.hue_shift;
    u.validate();
    return u;
}

ExplicitGraph::ExplicitGraph(std::vector<FeatureVector> nodes,
                             std::vector<std::vector<int>> adjacency)
    : nodes_(std::move(nodes)), adjacency_(std::move(adjacency)) {
    if (adjacency_.size() != nodes_.size()) {
        throw InvalidConfig("adjacency size does not match node count");
    }
    index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!index_.emplace(nodes_[i], static_cast<int>(i)).second) {
            throw InvalidConfig("duplicate node in graph domain: " + nodes_[i].to_string());
        }
    }
    for (auto& succ : adjacency_) {
        sort_by_node_order(succ, nodes_);
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
}

int ExplicitGraph::index_of(const FeatureVector& x) const {
    auto it = index_.find(x);
    return it == index_.end() ? -1 : it->second;
}

int ExplicitGraph::require_index(const FeatureVector& x) const {
    int id = index_of(x);
    if (id < 0) {
        throw NodeNotInDomain("input not in graph domain: " + x.to_string());
    }
    return id;
}

bool ExplicitGraph::has_edge(int from, int to) const {
    const auto& succ = adjacency_[static_cast<std::size_t>(from)];
    return std::find(succ.begin(), succ.end(), to) != succ.end();
}

ExplicitGraph ExplicitGraph::reversed() const {
    std::vector<std::vector<int>> rev(nodes_.size());
    for (std::size_t u = 0; u < nodes_.size(); ++u) {
        for (int v : adjacency_[u]) {
            rev[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
        }
    }
    return ExplicitGraph(nodes_, std::move(rev));
}

ExplicitGraph ExplicitGraph::with_extra_edge(const FeatureVector& from,
                                             const FeatureVector& to) const {
    int u = index_of(from);
    int v = index_of(to);
    if (u < 0 || v < 0) {
        throw EdgeEndpointsMissing("extra edge endpoint not in graph domain");
    }
    std::vector<std::vector<int>> adj = adjacency_;
    adj[static_cast<std::size_t>(u)].push_back(v);
    return ExplicitGraph(nodes_, std::move(adj));
}

std::vector<FeatureVector> atomic_moves(const RelationSpec& spec, const FeatureVector& x) {
    if (spec.hue_shift) {
        throw HueUnsupported("hue relation has no feature-vector moves; use the hue module");
    }
    std::vector<FeatureVector> moves;
    for (const auto& [from, to] : spec.explicit_edges) {
        if (from == x) moves.push_back(to);
    }
    for (std::size_t id : spec.additive) {
        if (id < x.dimension() && !x.get(id)) {
            FeatureVector z = x;
            z.set(id, true);
            moves.push_back(z);
        }
    }
    for (const auto& group : spec.equivalence_groups) {
        append_equivalence_moves(group, x, moves);
    }
    std::sort(moves.begin(), moves.end());
    moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
    return moves;
}

ExplicitGraph build_graph(const RelationSpec& spec,
                          const std::vector<FeatureVector>& domain,
                          std::size_t node_cap) {
    if (spec.hue_shift) {
        throw HueUnsupported("hue relation cannot be materialized as an explicit graph");
    }
    if (domain.size() > node_cap) {
        throw DomainTooLarge("domain has " + std::to_string(domain.size()) +
                             " nodes, cap is " + std::to_string(node_cap));
    }
    spec.validate();

    std::unordered_map<FeatureVector, int, FeatureVectorHash> index;
    index.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (!index.emplace(domain[i], static_cast<int>(i)).second) {
            throw InvalidConfig("duplicate input in domain: " + domain[i].to_string());
        }
    }

    // Bucket explicit edges by source so each node is matched once.
    std::unordered_map<FeatureVector, std::vector<const FeatureVector*>, FeatureVectorHash>
        explicit_by_source;
    for (const auto& [from, to] : spec.explicit_edges) {
        explicit_by_source[from].push_back(&to);
    }

    RelationSpec rules;
    rules.additive = spec.additive;
    rules.equivalence_groups = spec.equivalence_groups;

    std::vector<std::vector<int>> adjacency(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        auto& succ = adjacency[i];
        if (!rules.additive.empty() || !rules.equivalence_groups.empty()) {
            for (const FeatureVector& z : atomic_moves(rules, domain[i])) {
                auto it = index.find(z);
                if (it != index.end()) succ.push_back(it->second);
            }
        }
        auto bucket = explicit_by_source.find(domain[i]);
        if (bucket != explicit_by_source.end()) {
            for (const FeatureVector* z : bucket->second) {
                auto it = index.find(*z);
                if (it != index.end()) succ.push_back(it->second);
            }
        }
    }
    return ExplicitGraph(domain, std::move(adjacency));
}

std::vector<int> closure_ids(const ExplicitGraph& graph, int node) {
    std::vector<bool> seen(graph.node_count(), false);
    std::deque<int> queue{node};
    seen[static_cast<std::size_t>(node)] = true;
    std::vector<int> out;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        out.push_back(u);
        for (int v : graph.successors(u)) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                queue.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FeatureVector> closure(const ExplicitGraph& graph, const FeatureVector& x) {
    int start = graph.require_index(x);
    std::vector<FeatureVector> out;
    for (int id : closure_ids(graph, start)) out.push_back(graph.node(id));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> strongly_connected_components(const ExplicitGraph& graph) {
    // Iterative Tarjan; recursion depth is unbounded on chain graphs.
    const std::size_t n = graph.node_count();
    std::vector<int> scc_of(n, -1);
    std::vector<int> number(n, -1);
    std::vector<int> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_number = 0;
    int next_scc = 0;

    struct Frame {
        int node;
        std::size_t child;
    };
    std::vector<Frame> frames;

    for (std::size_t root = 0; root < n; ++root) {
        if (number[root] != -1) continue;
        frames.push_back({static_cast<int>(root), 0});
        while (!frames.empty()) {
            Frame& fr = frames.back();
            std::size_t u = static_cast<std::size_t>(fr.node);
            if (fr.child == 0) {
                number[u] = lowlink[u] = next_number++;
                stack.push_back(fr.node);
                on_stack[u] = true;
            }
            const auto& succ = graph.successors(fr.node);
            if (fr.child < succ.size()) {
                int v = succ[fr.child++];
                if (number[static_cast<std::size_t>(v)] == -1) {
                    frames.push_back({v, 0});
                } else if (on_stack[static_cast<std::size_t>(v)]) {
                    lowlink[u] = std::min(lowlink[u], number[static_cast<std::size_t>(v)]);
                }
            } else {
                if (lowlink[u] == number[u]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        scc_of[static_cast<std::size_t>(w)] = next_scc;
                    } while (w != fr.node);
                    ++next_scc;
                }
                int node = fr.node;
                frames.pop_back();
                if (!frames.empty()) {
                    std::size_t parent = static_cast<std::size_t>(frames.back().node);
                    lowlink[parent] = std::min(lowlink[parent],
                                               lowlink[static_cast<std::size_t>(node)]);
                }
            }
        }
    }
    return scc_of;
}

WccIndex wcc(const ExplicitGraph& graph) {
    const std::size_t n = graph.node_count();
    UnionFind uf(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (int v : graph.successors(static_cast<int>(u))) {
            uf.unite(static_cast<int>(u), v);
        }
    }

    WccIndex index;
    index.component_of.assign(n, -1);
    std::unordered_map<int, int> root_to_component;
    for (std::size_t u = 0; u < n; ++u) {
        int root = uf.find(static_cast<int>(u));
        auto [it, inserted] =
            root_to_component.emplace(root, static_cast<int>(index.members.size()));
        if (inserted) index.members.emplace_back();
        index.component_of[u] = it->second;
        index.members[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(u));
    }

    const std::vector<int> scc_of = strongly_connected_components(graph);
    index.strongly_connected.assign(index.members.size(), true);
    for (std::size_t c = 0; c < index.members.size(); ++c) {
        const auto& members = index.members[c];
        for (int id : members) {
            if (scc_of[static_cast<std::size_t>(id)] !=
                scc_of[static_cast<std::size_t>(members.front())]) {
                index.strongly_connected[c] = false;
                break;
            }
        }
    }
    return index;
}

bool is_reversible(const ExplicitGraph& graph) {
    WccIndex index = wcc(graph);
    return std::all_of(index.strongly_connected.begin(), index.strongly_connected.end(),
                       [](bool flag) { return flag; });
}

}  // namespace relad
