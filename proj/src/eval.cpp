#include "relad/eval.hpp"

#include <iomanip>
#include <sstream>

#include "relad/errors.hpp"

namespace relad {

namespace {

double percent(std::size_t part, std::size_t whole) {
    if (whole == 0) return 0.0;
    return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

EvalReport evaluate(const Classifier& f, const LabeledDataset& data,
                    const RelationSpec& spec, const Normalizer* normalizer,
                    const EvalOptions& options) {
    data.validate();
    if (data.num_labels != 2 || f.num_labels() != 2) {
        throw InvalidConfig("detection rates are defined for binary labels only");
    }
    if (data.dimension != f.dimension()) {
        throw DimensionMismatch("dataset dimension does not match the model");
    }

    const Normalizer identity = Normalizer::identity();
    const NormalizedClassifier wrapped(f, normalizer ? *normalizer : identity);
    const Classifier& pipeline = normalizer ? static_cast<const Classifier&>(wrapped)
                                            : static_cast<const Classifier&>(f);

    Partition default_partition;
    const Partition* partition = options.partition;
    if (partition == nullptr) {
        default_partition = per_group_partition(spec);
        partition = &default_partition;
    }

    std::size_t malicious = 0;
    std::size_t benign = 0;
    std::size_t clean_false_negative = 0;
    std::size_t clean_false_positive = 0;
    std::size_t evaded = 0;
    std::vector<std::size_t> per_attack_hits(options.attacks.size(), 0);

    for (std::size_t i = 0; i < data.size(); ++i) {
        const FeatureVector& x = data.inputs[i];
        const int y = data.labels[i];
        const int prediction = pipeline.predict(x);
        if (y == 0) {
            ++benign;
            if (prediction == 1) ++clean_false_positive;
            continue;
        }
        ++malicious;
        if (prediction == 0) ++clean_false_negative;

        const SuiteResult suite =
            attack_suite(pipeline, spec, x, y, options.attacks, partition, options.limits);
        if (suite.best.success) ++evaded;
        for (std::size_t a = 0; a < suite.per_attack.size() && a < per_attack_hits.size(); ++a) {
            if (suite.per_attack[a].second.success) ++per_attack_hits[a];
        }
    }

    EvalReport report;
    report.fnr_natural = percent(clean_false_negative, malicious);
    report.fpr_natural = percent(clean_false_positive, benign);
    report.fnr_adversarial = percent(evaded, malicious);
    report.fpr_adversarial = report.fpr_natural;  // the attacker only targets malware
    for (std::size_t a = 0; a < options.attacks.size(); ++a) {
        report.attack_success.emplace_back(options.attacks[a].name(),
                                           percent(per_attack_hits[a], malicious));
    }
    report.seed = options.seed;
    report.config = options.config_echo;
    return report;
}

nlohmann::json report_to_json(const EvalReport& report) {
    nlohmann::json j;
    j["fnr_natural"] = report.fnr_natural;
    j["fpr_natural"] = report.fpr_natural;
    j["fnr_adversarial"] = report.fnr_adversarial;
    j["fpr_adversarial"] = report.fpr_adversarial;
    nlohmann::json success = nlohmann::json::array();
    for (const auto& [name, rate] : report.attack_success) {
        success.push_back({{"attack", name}, {"success_rate", rate}});
    }
    j["attack_success"] = std::move(success);
    j["seed"] = report.seed;
    j["config"] = report.config;
    return j;
}

EvalReport report_from_json(const nlohmann::json& j) {
    EvalReport report;
    report.fnr_natural = j.at("fnr_natural").get<double>();
    report.fpr_natural = j.at("fpr_natural").get<double>();
    report.fnr_adversarial = j.at("fnr_adversarial").get<double>();
    report.fpr_adversarial = j.at("fpr_adversarial").get<double>();
    for (const auto& entry : j.at("attack_success")) {
        report.attack_success.emplace_back(entry.at("attack").get<std::string>(),
                                           entry.at("success_rate").get<double>());
    }
    report.seed = j.at("seed").get<std::uint64_t>();
    report.config = j.at("config").get<std::string>();
    return report;
}

std::string report_table(const EvalReport& report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1);
    out << "              FNR(%)   FPR(%)\n";
    out << "Natural      " << std::setw(7) << report.fnr_natural << "  " << std::setw(7)
        << report.fpr_natural << '\n';
    out << "Adversarial  " << std::setw(7) << report.fnr_adversarial << "  " << std::setw(7)
        << report.fpr_adversarial << '\n';
    return out.str();
}

}  // namespace relad
