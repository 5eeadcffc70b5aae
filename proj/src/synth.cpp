#include "relad/synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "relad/errors.hpp"

namespace relad {

void SynthConfig::validate() const {
    if (dimension == 0 || samples == 0) {
        throw InvalidConfig("synthetic config needs a positive dimension and sample count");
    }
    if (group_size == 1) {
        throw InvalidConfig("equivalence groups need at least 2 members");
    }
    if (group_feature_count() + spurious_count > dimension) {
        throw InvalidConfig("group and spurious features exceed the dimension");
    }
    if (noise_rate < 0.0 || noise_rate >= 0.5) {
        throw InvalidConfig("noise rate must lie in [0, 0.5)");
    }
    if (spurious_benign_rate < 0.0 || spurious_benign_rate > 1.0 ||
        spurious_malicious_rate < 0.0 || spurious_malicious_rate > 1.0) {
        throw InvalidConfig("spurious rates must lie in [0, 1]");
    }
}

SynthData synth_dataset(const SynthConfig& cfg, std::uint64_t seed) {
    cfg.validate();

    SynthData out;
    for (std::size_t g = 0; g < cfg.group_count; ++g) {
        std::vector<std::size_t> group;
        for (std::size_t k = 0; k < cfg.group_size; ++k) group.push_back(g * cfg.group_size + k);
        out.relation.equivalence_groups.push_back(std::move(group));
    }
    const std::size_t spurious_begin = cfg.group_feature_count();
    for (std::size_t s = 0; s < cfg.spurious_count; ++s) {
        out.relation.additive.push_back(spurious_begin + s);
    }

    // Hidden monotone rule over the canonical group indicators.
    std::mt19937_64 rule_rng(cfg.label_rule_seed);
    std::uniform_real_distribution<double> weight_dist(0.5, 1.5);
    std::vector<double> rule_weights(cfg.group_count);
    double weight_total = 0.0;
    for (double& w : rule_weights) {
        w = weight_dist(rule_rng);
        weight_total += w;
    }
    const double threshold = 0.5 * weight_total;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> member_pick(0, cfg.group_size - 1);

    out.data.dimension = cfg.dimension;
    out.data.num_labels = 2;
    const std::size_t background_begin = spurious_begin + cfg.spurious_count;
    for (std::size_t n = 0; n < cfg.samples; ++n) {
        FeatureVector x(cfg.dimension);

        double score = 0.0;
        for (std::size_t g = 0; g < cfg.group_count; ++g) {
            if (unit(rng) < 0.5) continue;  // group inactive
            score += rule_weights[g];
            x.set(g * cfg.group_size + member_pick(rng), true);
        }
        int label = score >= threshold ? 1 : 0;
        if (cfg.noise_rate > 0.0 && unit(rng) < cfg.noise_rate) label = 1 - label;

        const double spurious_rate =
            label == 0 ? cfg.spurious_benign_rate : cfg.spurious_malicious_rate;
        for (std::size_t s = 0; s < cfg.spurious_count; ++s) {
            if (unit(rng) < spurious_rate) x.set(spurious_begin + s, true);
        }
        for (std::size_t b = background_begin; b < cfg.dimension; ++b) {
            if (unit(rng) < 0.25) x.set(b, true);
        }

        out.data.inputs.push_back(std::move(x));
        out.data.labels.push_back(label);
    }
    return out;
}

DataSplit split_dataset(const LabeledDataset& data, double train_fraction,
                        double validation_fraction, std::uint64_t seed) {
    if (train_fraction < 0.0 || validation_fraction < 0.0 ||
        train_fraction + validation_fraction > 1.0) {
        throw InvalidConfig("split fractions must be non-negative and sum to at most 1");
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
    std::shuffle(order.begin(), order.end(), rng);

    const std::size_t train_count =
        static_cast<std::size_t>(train_fraction * static_cast<double>(data.size()));
    const std::size_t validation_count =
        static_cast<std::size_t>(validation_fraction * static_cast<double>(data.size()));

    DataSplit split;
    for (LabeledDataset* part : {&split.train, &split.validation, &split.test}) {
        part->dimension = data.dimension;
        part->num_labels = data.num_labels;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        LabeledDataset& part = i < train_count ? split.train
                               : i < train_count + validation_count ? split.validation
                                                                    : split.test;
        part.inputs.push_back(data.inputs[order[i]]);
        part.labels.push_back(data.labels[order[i]]);
    }
    return split;
}

}  // namespace relad
