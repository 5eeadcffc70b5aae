#ifndef RELAD_EVAL_HPP
#define RELAD_EVAL_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "relad/attacks.hpp"
#include "relad/models.hpp"
#include "relad/normalizer.hpp"
#include "relad/relation.hpp"

namespace relad {

/// Detection report in percentages; the adversarial row reruns the malicious
/// samples through the attack suite, benign inputs are never attacked so the
/// FPR column repeats.
struct EvalReport {
    double fnr_natural = 0.0;
    double fpr_natural = 0.0;
    double fnr_adversarial = 0.0;
    double fpr_adversarial = 0.0;
    std::vector<std::pair<std::string, double>> attack_success;  // percent of malicious
    std::uint64_t seed = 0;
    std::string config;
};

struct EvalOptions {
    std::vector<AttackConfig> attacks;
    const Partition* partition = nullptr;  // defaults to the per-group split of the relation
    AttackLimits limits;
    std::uint64_t seed = 0;
    std::string config_echo;
};

/**
 * Clean and under-attack error rates of a detector on a binary dataset.
 * When a normalizer is given, every prediction (clean or attacked) goes
 * through it first, and the attacker sees the full normalize-then-predict
 * pipeline.  A malicious sample counts as evaded if any configured attack,
 * or the clean input itself, is predicted benign.
 */
EvalReport evaluate(const Classifier& f, const LabeledDataset& data,
                    const RelationSpec& spec, const Normalizer* normalizer,
                    const EvalOptions& options);

nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);

/// Two-row FNR/FPR table, one column block per attack condition.
std::string report_table(const EvalReport& report);

}  // namespace relad

#endif  // RELAD_EVAL_HPP
