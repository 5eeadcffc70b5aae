#ifndef RELAD_ORACLE_HPP
#define RELAD_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "relad/feature_vector.hpp"
#include "relad/relation.hpp"

namespace relad {

/// Any label-valued function over inputs can play the classifier role here.
using LabelFn = std::function<int(const FeatureVector&)>;

/// Tolerance for probability normalization and for comparing accuracy sums
/// that aggregate the same mass along different orders.
inline constexpr double kProbTolerance = 1e-12;

/**
 * Explicit distribution over an enumerated input set: point mass mu per
 * input and conditional label probabilities eta per input.
 */
struct FiniteDistribution {
    std::vector<FeatureVector> inputs;
    std::vector<double> mass;                      // mu(x)
    std::vector<std::vector<double>> label_probs;  // eta(x, l)
    std::size_t num_labels = 2;

    std::size_t size() const { return inputs.size(); }
    void validate() const;
};

/// Total labeling of a graph's node set, by node id.
struct LabelingResult {
    double value = 0.0;
    std::vector<int> labels;
};

/// Optimal per-component labeling value plus the chosen label per component.
struct ComponentLabeling {
    double value = 0.0;
    std::vector<int> component_labels;  // indexed by wcc component id
};

/// True iff f is constant over the reflexive-transitive closure of x.
bool is_robust(const LabelFn& f, const ExplicitGraph& graph, const FeatureVector& x);

/// Probability mass of inputs where f is robust.
double robustness(const LabelFn& f, const ExplicitGraph& graph,
                  const FiniteDistribution& dist);

/// Probability mass of inputs where f is robust and correct.
double robust_accuracy(const LabelFn& f, const ExplicitGraph& graph,
                       const FiniteDistribution& dist);

/// Best robust accuracy achievable by labelings constant per weak component:
/// the sum over components of the largest per-label mass.  Ties pick the
/// lowest label index.
ComponentLabeling optimal_robust_accuracy(const ExplicitGraph& graph,
                                          const FiniteDistribution& dist);

/**
 * Change of the best attainable robust accuracy when one extra edge is added
 * to the relation, evaluated by the local component decomposition.  Always
 * <= 0; exactly 0 when the joined components share a majority label.
 */
double tradeoff_delta(const ExplicitGraph& graph, const FeatureVector& from,
                      const FeatureVector& to, const FiniteDistribution& dist);

/**
 * Exact maximum of robust accuracy over all labelings of the node set, by
 * enumeration.  Requires at most 16 nodes and at most 65536 candidate
 * labelings; larger instances are refused, never truncated.
 */
LabelingResult best_robust_labeling(const ExplicitGraph& graph,
                                    const FiniteDistribution& dist);

/**
 * Checks that normalizing over a reversible sub-relation loses nothing:
 * the best robust accuracy w.r.t. the full relation among classifiers
 * constant on the sub-relation's components equals the unconstrained
 * brute-force optimum, and the explicit majority construction built from a
 * brute-force witness attains it.
 */
bool verify_unification(const ExplicitGraph& full, const ExplicitGraph& reversible_subset,
                        const FiniteDistribution& dist);

/**
 * Decides whether some weight vector and bias realize the complete truth
 * table with strictly positive scores on label 1 and strictly negative on
 * label 0.  Row i of the table assigns coordinate j the bit (i >> j) & 1.
 * Decided exactly by rational pivoting over the sign constraints.
 */
bool linear_separability_check(const std::vector<int>& table, std::size_t arity);

}  // namespace relad

#endif  // RELAD_ORACLE_HPP
