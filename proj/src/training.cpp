#include "relad/training.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "relad/attacks.hpp"
#include "relad/errors.hpp"

namespace relad {

TrainScheme parse_scheme(const std::string& name) {
    if (name == "natural") return TrainScheme::natural;
    if (name == "np") return TrainScheme::np;
    if (name == "adversarial") return TrainScheme::adversarial;
    if (name == "unified") return TrainScheme::unified;
    throw InvalidConfig("unknown training scheme: " + name);
}

std::string scheme_name(TrainScheme scheme) {
    switch (scheme) {
        case TrainScheme::natural: return "natural";
        case TrainScheme::np: return "np";
        case TrainScheme::adversarial: return "adversarial";
        case TrainScheme::unified: return "unified";
    }
    return "unknown";
}

void TrainConfig::validate() const {
    if (epochs < 1) throw InvalidConfig("epochs must be at least 1");
    if (learning_rate <= 0.0) throw InvalidConfig("learning rate must be positive");
    if (batch_size < 1) throw InvalidConfig("batch size must be at least 1");
    if (attack_iterations < 0 || attack_moves < 0) {
        throw InvalidConfig("attack budget must be non-negative");
    }
}

void train(Model& model, const LabeledDataset& data, const TrainConfig& cfg,
           const RelationSpec* attack_relation, const Normalizer* normalizer,
           const std::function<void(int, double)>& on_epoch) {
    cfg.validate();
    data.validate();
    if (data.dimension != model.dimension() || data.num_labels != model.num_labels()) {
        throw DimensionMismatch("dataset shape does not match the model");
    }
    const bool needs_normalizer =
        cfg.scheme == TrainScheme::np || cfg.scheme == TrainScheme::unified;
    if (needs_normalizer && normalizer == nullptr) {
        throw MissingNormalizer(scheme_name(cfg.scheme) + " training needs a normalizer");
    }
    const bool needs_attack =
        cfg.scheme == TrainScheme::adversarial || cfg.scheme == TrainScheme::unified;
    if (needs_attack && attack_relation == nullptr) {
        throw InvalidConfig(scheme_name(cfg.scheme) + " training needs an attack relation");
    }

    model.initialize(cfg.seed);

    const auto transform = [&](const FeatureVector& x, int y) {
        switch (cfg.scheme) {
            case TrainScheme::natural:
                return x;
            case TrainScheme::np:
                return (*normalizer)(x);
            case TrainScheme::adversarial:
                return greedy_by_grad(model, *attack_relation, x, y, cfg.attack_moves,
                                      cfg.attack_iterations)
                    .adversarial;
            case TrainScheme::unified:
                return greedy_by_grad(model, *attack_relation, (*normalizer)(x), y,
                                      cfg.attack_moves, cfg.attack_iterations)
                    .adversarial;
        }
        return x;
    };

    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> params = model.parameters();
    std::vector<double> grad(params.size());
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end =
                std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t i = start; i < end; ++i) {
                const std::size_t idx = order[i];
                const FeatureVector x = transform(data.inputs[idx], data.labels[idx]);
                const std::vector<double> g = model.parameter_gradient(x, data.labels[idx]);
                for (std::size_t p = 0; p < grad.size(); ++p) grad[p] += g[p];
            }
            const double scale = cfg.learning_rate / static_cast<double>(end - start);
            params = model.parameters();
            for (std::size_t p = 0; p < params.size(); ++p) params[p] -= scale * grad[p];
            model.set_parameters(params);
        }
        if (on_epoch) {
            double total = 0.0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                const FeatureVector x = transform(data.inputs[i], data.labels[i]);
                total += model.nll_loss(x, data.labels[i]);
            }
            on_epoch(epoch, total / static_cast<double>(std::max<std::size_t>(1, data.size())));
        }
    }
}

}  // namespace relad
