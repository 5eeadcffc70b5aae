#ifndef RELAD_SYNTH_HPP
#define RELAD_SYNTH_HPP

#include <cstdint>

#include "relad/models.hpp"
#include "relad/relation.hpp"

namespace relad {

/**
 * Layout of the synthetic detection task: the first group_count*group_size
 * coordinates form equivalence groups (interchangeable API variants), the
 * next spurious_count coordinates are additive-flippable features correlated
 * with the benign class, and the rest is uncorrelated background.
 */
struct SynthConfig {
    std::size_t dimension = 64;
    std::size_t samples = 2000;
    std::size_t group_count = 8;
    std::size_t group_size = 4;
    std::size_t spurious_count = 8;
    double noise_rate = 0.0;
    std::uint64_t label_rule_seed = 17;

    // How strongly the spurious block leans benign.
    double spurious_benign_rate = 0.85;
    double spurious_malicious_rate = 0.05;

    void validate() const;
    std::size_t group_feature_count() const { return group_count * group_size; }
};

struct SynthData {
    LabeledDataset data;
    RelationSpec relation;  // ground truth: the groups plus the additive block
};

/**
 * Draws a dataset whose labels follow a hidden monotone rule over the
 * canonical group indicators, scatters each active group uniformly across
 * its members, and plants the benign-leaning spurious block.  Deterministic
 * given the seed.
 */
SynthData synth_dataset(const SynthConfig& cfg, std::uint64_t seed);

/// Seeded shuffle split; fractions are train/validation shares of the whole.
struct DataSplit {
    LabeledDataset train;
    LabeledDataset validation;
    LabeledDataset test;
};
DataSplit split_dataset(const LabeledDataset& data, double train_fraction,
                        double validation_fraction, std::uint64_t seed);

}  // namespace relad

#endif  // RELAD_SYNTH_HPP
