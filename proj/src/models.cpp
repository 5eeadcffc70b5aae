#include "relad/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "relad/errors.hpp"

namespace relad {

namespace {

double softplus(double t) {
    // log(1 + e^t) without overflow on either tail.
    if (t > 0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

std::vector<double> uniform_params(std::size_t count, double bound, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    std::vector<double> out(count);
    for (double& v : out) v = dist(rng);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Classifier
// ---------------------------------------------------------------------------

void Classifier::check_input(std::span<const double> x) const {
    if (x.size() != dimension()) {
        throw DimensionMismatch("input has dimension " + std::to_string(x.size()) +
                                ", model expects " + std::to_string(dimension()));
    }
}

void Classifier::check_label(int label) const {
    if (label < 0 || static_cast<std::size_t>(label) >= num_labels()) {
        throw DimensionMismatch("label " + std::to_string(label) + " outside label set of " +
                                std::to_string(num_labels()));
    }
}

int Classifier::predict_impl(std::span<const double> x) const {
    const std::vector<double> lp = log_probs(x);
    int best = 0;
    for (std::size_t l = 1; l < lp.size(); ++l) {
        if (lp[l] > lp[static_cast<std::size_t>(best)]) best = static_cast<int>(l);
    }
    return best;
}

int Classifier::predict(std::span<const double> x) const {
    check_input(x);
    return predict_impl(x);
}

int Classifier::predict(const FeatureVector& x) const {
    const std::vector<double> xs = x.to_reals();
    return predict(std::span<const double>(xs));
}

double Classifier::nll_loss(std::span<const double> x, int label) const {
    check_input(x);
    check_label(label);
    return -log_probs(x)[static_cast<std::size_t>(label)];
}

double Classifier::nll_loss(const FeatureVector& x, int label) const {
    const std::vector<double> xs = x.to_reals();
    return nll_loss(std::span<const double>(xs), label);
}

double Classifier::zero_one_loss(const FeatureVector& x, int label) const {
    check_label(label);
    return predict(x) == label ? 0.0 : 1.0;
}

std::vector<double> Classifier::input_gradient(const FeatureVector& x, int label) const {
    const std::vector<double> xs = x.to_reals();
    return input_gradient(std::span<const double>(xs), label);
}

std::vector<double> Model::parameter_gradient(const FeatureVector& x, int label) const {
    const std::vector<double> xs = x.to_reals();
    return parameter_gradient(std::span<const double>(xs), label);
}

// ---------------------------------------------------------------------------
// LinearModel
// ---------------------------------------------------------------------------

LinearModel::LinearModel(std::size_t dimension) : weights_(dimension, 0.0) {}

LinearModel::LinearModel(std::vector<double> weights, double bias)
    : weights_(std::move(weights)), bias_(bias) {}

double LinearModel::score(std::span<const double> x) const {
    double s = bias_;
    for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * x[i];
    return s;
}

int LinearModel::predict_impl(std::span<const double> x) const {
    return score(x) > 0.0 ? 1 : 0;
}

std::vector<double> LinearModel::log_probs(std::span<const double> x) const {
    check_input(x);
    const double s = score(x);
    // P(1) = sigmoid(s): log P(1) = -softplus(-s), log P(0) = -softplus(s).
    return {-softplus(s), -softplus(-s)};
}

std::vector<double> LinearModel::input_gradient(std::span<const double> x, int label) const {
    check_input(x);
    check_label(label);
    const double p1 = 1.0 / (1.0 + std::exp(-score(x)));
    const double delta = p1 - (label == 1 ? 1.0 : 0.0);
    std::vector<double> g(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) g[i] = delta * weights_[i];
    return g;
}

std::vector<double> LinearModel::parameters() const {
    std::vector<double> out = weights_;
    out.push_back(bias_);
    return out;
}

void LinearModel::set_parameters(std::span<const double> params) {
    if (params.size() != parameter_count()) {
        throw DimensionMismatch("linear model expects " + std::to_string(parameter_count()) +
                                " parameters");
    }
    std::copy(params.begin(), params.end() - 1, weights_.begin());
    bias_ = params.back();
}

void LinearModel::initialize(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double bound = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(1, dimension())));
    std::vector<double> params = uniform_params(parameter_count(), bound, rng);
    set_parameters(params);
}

std::vector<double> LinearModel::parameter_gradient(std::span<const double> x,
                                                    int label) const {
    check_input(x);
    check_label(label);
    const double p1 = 1.0 / (1.0 + std::exp(-score(x)));
    const double delta = p1 - (label == 1 ? 1.0 : 0.0);
    std::vector<double> g(parameter_count());
    for (std::size_t i = 0; i < weights_.size(); ++i) g[i] = delta * x[i];
    g.back() = delta;
    return g;
}

// ---------------------------------------------------------------------------
// MlpModel
// ---------------------------------------------------------------------------

MlpModel::MlpModel(std::vector<std::size_t> layer_sizes)
    : layer_sizes_(std::move(layer_sizes)) {
    if (layer_sizes_.size() < 2) {
        throw InvalidConfig("MLP needs at least input and output layers");
    }
    if (layer_sizes_.back() < 2) {
        throw InvalidConfig("MLP output layer must cover at least 2 labels");
    }
    for (std::size_t size : layer_sizes_) {
        if (size == 0) throw InvalidConfig("MLP layer size must be positive");
    }
    for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
        weights_.emplace_back(layer_sizes_[l + 1] * layer_sizes_[l], 0.0);
        biases_.emplace_back(layer_sizes_[l + 1], 0.0);
    }
}

MlpModel::Trace MlpModel::forward(std::span<const double> x) const {
    Trace t;
    t.post.emplace_back(x.begin(), x.end());
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        const std::size_t rows = layer_sizes_[l + 1];
        const std::size_t cols = layer_sizes_[l];
        const std::vector<double>& in = t.post.back();
        std::vector<double> z(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            double acc = biases_[l][r];
            const double* w = &weights_[l][r * cols];
            for (std::size_t c = 0; c < cols; ++c) acc += w[c] * in[c];
            z[r] = acc;
        }
        t.pre.push_back(z);
        if (l + 1 < weights_.size()) {
            for (double& v : z) v = std::max(0.0, v);
        }
        t.post.push_back(std::move(z));
    }
    return t;
}

std::vector<double> MlpModel::log_probs(std::span<const double> x) const {
    check_input(x);
    const Trace t = forward(x);
    return log_softmax(t.pre.back());
}

MlpModel::Trace MlpModel::backward(std::span<const double> x, int label,
                                   std::vector<std::vector<double>>& deltas) const {
    Trace t = forward(x);
    deltas.assign(weights_.size(), {});

    // Output delta: softmax - onehot(label).
    const std::vector<double> lp = log_softmax(t.pre.back());
    std::vector<double> delta(lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) {
        delta[i] = std::exp(lp[i]) - (static_cast<int>(i) == label ? 1.0 : 0.0);
    }
    deltas.back() = delta;

    for (std::size_t l = weights_.size() - 1; l > 0; --l) {
        const std::size_t rows = layer_sizes_[l + 1];
        const std::size_t cols = layer_sizes_[l];
        std::vector<double> prev(cols, 0.0);
        for (std::size_t r = 0; r < rows; ++r) {
            const double d = deltas[l][r];
            if (d == 0.0) continue;
            const double* w = &weights_[l][r * cols];
            for (std::size_t c = 0; c < cols; ++c) prev[c] += d * w[c];
        }
        // ReLU mask of the hidden layer below.
        for (std::size_t c = 0; c < cols; ++c) {
            if (t.pre[l - 1][c] <= 0.0) prev[c] = 0.0;
        }
        deltas[l - 1] = std::move(prev);
    }
    return t;
}

std::vector<double> MlpModel::input_gradient(std::span<const double> x, int label) const {
    check_input(x);
    check_label(label);
    std::vector<std::vector<double>> deltas;
    backward(x, label, deltas);

    const std::size_t rows = layer_sizes_[1];
    const std::size_t cols = layer_sizes_[0];
    std::vector<double> g(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const double d = deltas[0][r];
        if (d == 0.0) continue;
        const double* w = &weights_[0][r * cols];
        for (std::size_t c = 0; c < cols; ++c) g[c] += d * w[c];
    }
    return g;
}

std::size_t MlpModel::parameter_count() const {
    std::size_t count = 0;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        count += weights_[l].size() + biases_[l].size();
    }
    return count;
}

std::vector<double> MlpModel::parameters() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        out.insert(out.end(), weights_[l].begin(), weights_[l].end());
        out.insert(out.end(), biases_[l].begin(), biases_[l].end());
    }
    return out;
}

void MlpModel::set_parameters(std::span<const double> params) {
    if (params.size() != parameter_count()) {
        throw DimensionMismatch("MLP expects " + std::to_string(parameter_count()) +
                                " parameters, got " + std::to_string(params.size()));
    }
    std::size_t offset = 0;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(offset), weights_[l].size(),
                    weights_[l].begin());
        offset += weights_[l].size();
        std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(offset), biases_[l].size(),
                    biases_[l].begin());
        offset += biases_[l].size();
    }
}

void MlpModel::initialize(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer_sizes_[l]));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (double& w : weights_[l]) w = dist(rng);
        for (double& b : biases_[l]) b = dist(rng);
    }
}

std::vector<double> MlpModel::parameter_gradient(std::span<const double> x, int label) const {
    check_input(x);
    check_label(label);
    std::vector<std::vector<double>> deltas;
    const Trace t = backward(x, label, deltas);

    std::vector<double> g;
    g.reserve(parameter_count());
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        const std::size_t rows = layer_sizes_[l + 1];
        const std::size_t cols = layer_sizes_[l];
        const std::vector<double>& in = t.post[l];
        for (std::size_t r = 0; r < rows; ++r) {
            const double d = deltas[l][r];
            for (std::size_t c = 0; c < cols; ++c) g.push_back(d * in[c]);
        }
        for (std::size_t r = 0; r < rows; ++r) g.push_back(deltas[l][r]);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Dataset helpers
// ---------------------------------------------------------------------------

void LabeledDataset::validate() const {
    if (inputs.size() != labels.size()) {
        throw InvalidConfig("dataset inputs and labels differ in length");
    }
    for (const FeatureVector& x : inputs) {
        if (x.dimension() != dimension) {
            throw DimensionMismatch("dataset vector dimension mismatch");
        }
    }
    for (int y : labels) {
        if (y < 0 || static_cast<std::size_t>(y) >= num_labels) {
            throw InvalidConfig("dataset label outside label set: " + std::to_string(y));
        }
    }
}

std::vector<double> log_softmax(std::span<const double> logits) {
    const double max = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double v : logits) sum += std::exp(v - max);
    const double log_z = max + std::log(sum);
    std::vector<double> out(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - log_z;
    return out;
}

double mean_nll(const Classifier& f, const LabeledDataset& data) {
    if (data.inputs.empty()) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        total += f.nll_loss(data.inputs[i], data.labels[i]);
    }
    return total / static_cast<double>(data.inputs.size());
}

double accuracy(const Classifier& f, const LabeledDataset& data) {
    if (data.inputs.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        if (f.predict(data.inputs[i]) == data.labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(data.inputs.size());
}

}  // namespace relad
