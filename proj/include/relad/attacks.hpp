#ifndef RELAD_ATTACKS_HPP
#define RELAD_ATTACKS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "relad/models.hpp"
#include "relad/relation.hpp"

namespace relad {

/// Outcome of a single attack run against one labeled input.
struct AttackResult {
    FeatureVector adversarial;
    double loss = 0.0;
    bool success = false;                 // prediction differs from the true label
    std::vector<FeatureVector> moves;     // intermediate inputs, in application order
    int group_budget_fallbacks = 0;       // per-part enumerations that hit the state cap
};

/// Relation split into parts with pairwise-disjoint coordinate supports, so
/// per-part optima can be combined coordinate-wise.
struct Partition {
    std::vector<RelationSpec> parts;
};

/// Whole relation as a one-part partition.
Partition single_partition(const RelationSpec& spec);

/// One part per equivalence group, one for all additive flips, one for the
/// explicit edges; empty parts are dropped.
Partition per_group_partition(const RelationSpec& spec);

/// Throws OverlappingPartition unless all part supports are disjoint.
void validate_partition(const Partition& partition);

struct AttackLimits {
    std::size_t closure_cap = std::size_t{1} << 20;  // exhaustive search bound
    std::size_t part_state_cap = 4096;               // per-part enumeration bound
};

/**
 * Exact attack: maximizes the model loss over the whole closure of x via
 * breadth-first enumeration with lexicographic child ordering; ties keep the
 * first vector encountered.
 */
AttackResult exhaustive_attack(const Classifier& f, const RelationSpec& spec,
                               const FeatureVector& x, int label,
                               const AttackLimits& limits = {});

/**
 * Greedy search over a partitioned relation: each iteration finds, per part,
 * the loss-maximizing element of the current input's part-closure (ties to
 * the lexicographic minimum) and merges the per-part coordinate blocks.
 * Parts whose closure exceeds the state cap fall back to single-move hill
 * climbing; the fallback count is reported on the result.
 */
AttackResult greedy_by_group(const Classifier& f, const Partition& partition,
                             const FeatureVector& x, int label, int iterations,
                             const AttackLimits& limits = {});

/**
 * First-order greedy attack: each iteration scores every atomic move by the
 * gradient approximation of its loss change and applies the top-scoring
 * strictly positive moves, at most `moves_per_iteration`, skipping moves
 * that touch an already-modified coordinate.
 */
AttackResult greedy_by_grad(const Classifier& f, const RelationSpec& spec,
                            const FeatureVector& x, int label,
                            int moves_per_iteration, int iterations);

struct AttackConfig {
    enum class Algo { exhaustive, greedy_group, greedy_grad };
    Algo algo = Algo::greedy_grad;
    int iterations = 1;   // K
    int moves = 1;        // m, greedy_grad only

    std::string name() const;
};

struct SuiteResult {
    AttackResult best;
    std::vector<std::pair<std::string, AttackResult>> per_attack;
};

/**
 * Runs the configured attacks and keeps the highest-loss result; the clean
 * input is always a candidate.  Success is true iff any candidate, the clean
 * input included, is misclassified.  An exhaustive entry whose closure
 * exceeds the cap is skipped.
 */
SuiteResult attack_suite(const Classifier& f, const RelationSpec& spec,
                         const FeatureVector& x, int label,
                         const std::vector<AttackConfig>& configs,
                         const Partition* partition = nullptr,
                         const AttackLimits& limits = {});

}  // namespace relad

#endif  // RELAD_ATTACKS_HPP
