#ifndef RELAD_RELATION_HPP
#define RELAD_RELATION_HPP

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relad/feature_vector.hpp"

namespace relad {

/**
 * Declarative description of the admissible input transformations.
 *
 * A spec may combine several kinds of atomic moves; the relation it denotes
 * is the union of its parts:
 *   - explicit_edges: ordered input pairs over an enumerated domain,
 *   - additive: single flips of a listed feature from 0 to 1,
 *   - equivalence_groups: single-coordinate edits inside a group that keep
 *     the group's OR value, plus relocation of a group's only active
 *     coordinate to another member,
 *   - hue_shift: marker for the circular hue relation (image module).
 */
struct RelationSpec {
    std::vector<std::pair<FeatureVector, FeatureVector>> explicit_edges;
    std::vector<std::size_t> additive;
    std::vector<std::vector<std::size_t>> equivalence_groups;
    bool hue_shift = false;

    bool empty() const;

    /// Checks structural invariants: groups pairwise disjoint, each of size
    /// at least 2, feature ids within dimension when one is given.
    void validate(std::optional<std::size_t> dimension = std::nullopt) const;

    /// Sorted set of coordinates the rule-structured moves can touch.
    std::vector<std::size_t> coordinate_support() const;

    static RelationSpec union_of(const RelationSpec& a, const RelationSpec& b);
};

/**
 * Relational graph over an enumerated finite domain.  Edge (x, z) is present
 * iff z is an atomic-move successor of x.  Immutable after construction.
 */
class ExplicitGraph {
public:
    static constexpr std::size_t kDefaultNodeCap = std::size_t{1} << 20;

    ExplicitGraph(std::vector<FeatureVector> nodes,
                  std::vector<std::vector<int>> adjacency);

    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<FeatureVector>& nodes() const { return nodes_; }
    const FeatureVector& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

    /// Successor ids, sorted by the target's lexicographic bit order.
    const std::vector<int>& successors(int id) const {
        return adjacency_[static_cast<std::size_t>(id)];
    }

    /// Index of a node, or -1 when absent.
    int index_of(const FeatureVector& x) const;

    /// Index of a node; throws NodeNotInDomain when absent.
    int require_index(const FeatureVector& x) const;

    bool has_edge(int from, int to) const;

    /// Same nodes with every edge direction flipped.
    ExplicitGraph reversed() const;

    /// Copy with one extra directed edge (endpoints must exist).
    ExplicitGraph with_extra_edge(const FeatureVector& from, const FeatureVector& to) const;

private:
    std::vector<FeatureVector> nodes_;
    std::vector<std::vector<int>> adjacency_;
    std::unordered_map<FeatureVector, int, FeatureVectorHash> index_;
};

/// Partition of the node set into weakly connected components.
struct WccIndex {
    std::vector<int> component_of;           // node id -> component id
    std::vector<std::vector<int>> members;   // component id -> node ids, ascending
    std::vector<bool> strongly_connected;    // component id -> all pairs mutually reachable

    std::size_t component_count() const { return members.size(); }
};

/// Materializes the relational graph of `spec` restricted to `domain`.
ExplicitGraph build_graph(const RelationSpec& spec,
                          const std::vector<FeatureVector>& domain,
                          std::size_t node_cap = ExplicitGraph::kDefaultNodeCap);

/// One-step successors of x under the spec, sorted and duplicate-free.
std::vector<FeatureVector> atomic_moves(const RelationSpec& spec, const FeatureVector& x);

/// Reflexive-transitive closure {z | x ->* z}, sorted; always contains x.
std::vector<FeatureVector> closure(const ExplicitGraph& graph, const FeatureVector& x);

/// Closure as node ids, ascending.
std::vector<int> closure_ids(const ExplicitGraph& graph, int node);

WccIndex wcc(const ExplicitGraph& graph);

/// Strongly connected components; returns the scc id of every node.
std::vector<int> strongly_connected_components(const ExplicitGraph& graph);

/// True iff every weak component is strongly connected, i.e. x ->* z
/// implies z ->* x for all node pairs.
bool is_reversible(const ExplicitGraph& graph);

}  // namespace relad

#endif  // RELAD_RELATION_HPP
