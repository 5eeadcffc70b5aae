#ifndef RELAD_NORMALIZER_HPP
#define RELAD_NORMALIZER_HPP

#include <memory>
#include <variant>
#include <vector>

#include "relad/models.hpp"
#include "relad/relation.hpp"

namespace relad {

/**
 * Per-component normal form of an explicit graph: condense strongly
 * connected subsets, fix a depth-first topological order (children visited
 * lexicographically), and return the representative of the condensed
 * component that closes first, i.e. the topologically last one.  The
 * representative of a condensed set is its lexicographically smallest
 * member.  The result is identical for every input of a weak component.
 */
FeatureVector generic_normalize(const ExplicitGraph& graph, const FeatureVector& x);

/// Normal-form node id per node, as computed by generic_normalize.
std::vector<int> generic_normal_form_ids(const ExplicitGraph& graph);

/**
 * Closed-form canonicalization for equivalence groups: every group whose OR
 * is 1 keeps exactly its lowest-indexed coordinate set; coordinates outside
 * the groups pass through unchanged.
 */
FeatureVector equivalence_normalize(const std::vector<std::vector<std::size_t>>& groups,
                                    const FeatureVector& x);

/**
 * Normal form via the strongest adversarial example: over the closure of x
 * (which equals the weak component when the relation is reversible), the
 * element maximizing the model loss against the reference label, ties to the
 * lexicographic minimum.  The reference label is the model's prediction at
 * the lexicographically smallest closure element, so the result is
 * deterministic and constant per component.
 */
FeatureVector strongest_adv_normalize(const Classifier& f, const ExplicitGraph& graph,
                                      const FeatureVector& x);

/**
 * Deterministic per-component normal-form map.  A normalizer is a value; the
 * graph-backed variants precompute the form of every component at build time
 * so lookups are O(1).
 */
class Normalizer {
public:
    /// Maps every input to itself.
    static Normalizer identity();

    static Normalizer equivalence(std::vector<std::vector<std::size_t>> groups);

    /// Closed form of the generic algorithm for an additive relation: every
    /// flippable coordinate is raised to 1.
    static Normalizer additive_saturation(std::vector<std::size_t> flippable);

    static Normalizer generic_graph(ExplicitGraph graph);

    static Normalizer strongest_adv(std::shared_ptr<const Classifier> f, ExplicitGraph graph);

    /**
     * Composite normalizer for a rule-structured spec: equivalence groups by
     * canonicalization, additive moves by saturation, explicit edges by the
     * generic graph algorithm over `domain` extended with the edge
     * endpoints.  Inputs outside the explicit-edge domain pass through that
     * step unchanged (they sit in singleton components).
     */
    static Normalizer for_spec(const RelationSpec& spec,
                               const std::vector<FeatureVector>& domain = {});

    FeatureVector operator()(const FeatureVector& x) const;

    bool is_identity() const { return steps_.empty(); }

private:
    struct EquivalenceStep {
        std::vector<std::vector<std::size_t>> groups;
    };
    struct AdditiveStep {
        std::vector<std::size_t> flippable;
    };
    struct GraphStep {
        std::shared_ptr<const ExplicitGraph> graph;
        std::vector<int> form_of;  // node id -> normal form node id
        bool strict;               // throw on unknown inputs instead of passing through
    };
    struct StrongestAdvStep {
        std::shared_ptr<const Classifier> model;
        std::shared_ptr<const ExplicitGraph> graph;
        std::vector<int> form_of;
    };
    using Step = std::variant<EquivalenceStep, AdditiveStep, GraphStep, StrongestAdvStep>;

    std::vector<Step> steps_;
};

/**
 * Normalize-then-predict pipeline: forwards every query through the
 * normalizer before the wrapped model sees it.  Input gradients are taken at
 * the normalized point, the standard surrogate for a piecewise-constant map.
 */
class NormalizedClassifier final : public Classifier {
public:
    NormalizedClassifier(const Classifier& inner, const Normalizer& normalizer)
        : inner_(inner), normalizer_(normalizer) {}

    std::size_t dimension() const override { return inner_.dimension(); }
    std::size_t num_labels() const override { return inner_.num_labels(); }
    std::vector<double> log_probs(std::span<const double> x) const override;
    std::vector<double> input_gradient(std::span<const double> x, int label) const override;
    using Classifier::input_gradient;

private:
    FeatureVector normalized(std::span<const double> x) const;

    const Classifier& inner_;
    const Normalizer& normalizer_;
};

}  // namespace relad

#endif  // RELAD_NORMALIZER_HPP
