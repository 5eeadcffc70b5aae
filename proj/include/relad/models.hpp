#ifndef RELAD_MODELS_HPP
#define RELAD_MODELS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relad/feature_vector.hpp"

namespace relad {

/**
 * Label-predicting model over binary feature vectors, evaluated on a
 * real-relaxed input so attacks and gradient checks can probe it off the
 * hypercube.  Labels are 0..num_labels()-1.
 */
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual std::size_t dimension() const = 0;
    virtual std::size_t num_labels() const = 0;

    /// Log of the class-probability vector at x.
    virtual std::vector<double> log_probs(std::span<const double> x) const = 0;

    /// Gradient of the negative log-likelihood with respect to the input.
    virtual std::vector<double> input_gradient(std::span<const double> x, int label) const = 0;

    int predict(std::span<const double> x) const;
    int predict(const FeatureVector& x) const;

    /// Negative log-likelihood of the given label.
    double nll_loss(std::span<const double> x, int label) const;
    double nll_loss(const FeatureVector& x, int label) const;

    /// 1 when the prediction differs from the label, else 0.
    double zero_one_loss(const FeatureVector& x, int label) const;

    std::vector<double> input_gradient(const FeatureVector& x, int label) const;

protected:
    void check_input(std::span<const double> x) const;
    void check_label(int label) const;

    /// Prediction rule hook; the default takes the arg-max class with ties
    /// resolved to the lowest label index.
    virtual int predict_impl(std::span<const double> x) const;
};

/// Trainable classifier exposing a flat parameter vector.
class Model : public Classifier {
public:
    virtual std::size_t parameter_count() const = 0;
    virtual std::vector<double> parameters() const = 0;
    virtual void set_parameters(std::span<const double> params) = 0;

    /// Seeded uniform init in [-1/sqrt(fan_in), +1/sqrt(fan_in)].
    virtual void initialize(std::uint64_t seed) = 0;

    /// Gradient of nll_loss(x, label) with respect to parameters(), same layout.
    virtual std::vector<double> parameter_gradient(std::span<const double> x,
                                                   int label) const = 0;
    std::vector<double> parameter_gradient(const FeatureVector& x, int label) const;

    virtual std::string kind() const = 0;
};

/**
 * Binary linear threshold model with a logistic likelihood.  Predicts 1
 * exactly when <w, x> + b > 0; a zero score ties to label 0.
 */
class LinearModel final : public Model {
public:
    explicit LinearModel(std::size_t dimension);
    LinearModel(std::vector<double> weights, double bias);

    double score(std::span<const double> x) const;
    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }

    std::size_t dimension() const override { return weights_.size(); }
    std::size_t num_labels() const override { return 2; }
    std::vector<double> log_probs(std::span<const double> x) const override;
    std::vector<double> input_gradient(std::span<const double> x, int label) const override;
    using Classifier::input_gradient;

    std::size_t parameter_count() const override { return weights_.size() + 1; }
    std::vector<double> parameters() const override;
    void set_parameters(std::span<const double> params) override;
    void initialize(std::uint64_t seed) override;
    std::vector<double> parameter_gradient(std::span<const double> x, int label) const override;
    using Model::parameter_gradient;
    std::string kind() const override { return "linear"; }

protected:
    int predict_impl(std::span<const double> x) const override;

private:
    std::vector<double> weights_;
    double bias_ = 0.0;
};

/**
 * Fully connected network with ReLU hidden layers and a softmax output.
 * layer_sizes = {input, hidden..., output}; output size is the label count.
 */
class MlpModel final : public Model {
public:
    explicit MlpModel(std::vector<std::size_t> layer_sizes);

    const std::vector<std::size_t>& layer_sizes() const { return layer_sizes_; }

    std::size_t dimension() const override { return layer_sizes_.front(); }
    std::size_t num_labels() const override { return layer_sizes_.back(); }
    std::vector<double> log_probs(std::span<const double> x) const override;
    std::vector<double> input_gradient(std::span<const double> x, int label) const override;
    using Classifier::input_gradient;

    std::size_t parameter_count() const override;
    std::vector<double> parameters() const override;
    void set_parameters(std::span<const double> params) override;
    void initialize(std::uint64_t seed) override;
    std::vector<double> parameter_gradient(std::span<const double> x, int label) const override;
    using Model::parameter_gradient;
    std::string kind() const override { return "mlp"; }

private:
    struct Trace {
        std::vector<std::vector<double>> pre;    // pre-activation per layer
        std::vector<std::vector<double>> post;   // post-activation per layer (input first)
    };
    Trace forward(std::span<const double> x) const;

    // Backpropagated output deltas for nll at (x, label); fills per-layer
    // deltas and returns the trace used.
    Trace backward(std::span<const double> x, int label,
                   std::vector<std::vector<double>>& deltas) const;

    std::vector<std::size_t> layer_sizes_;
    std::vector<std::vector<double>> weights_;  // per layer, row-major [out][in]
    std::vector<std::vector<double>> biases_;   // per layer
};

/// Training/evaluation data: parallel inputs and labels over a fixed label set.
struct LabeledDataset {
    std::vector<FeatureVector> inputs;
    std::vector<int> labels;
    std::size_t dimension = 0;
    std::size_t num_labels = 2;

    std::size_t size() const { return inputs.size(); }
    void validate() const;
};

/// Log-probability vector from raw scores, numerically stable.
std::vector<double> log_softmax(std::span<const double> logits);

/// Mean nll_loss over a dataset.
double mean_nll(const Classifier& f, const LabeledDataset& data);

/// Fraction of correct predictions.
double accuracy(const Classifier& f, const LabeledDataset& data);

}  // namespace relad

#endif  // RELAD_MODELS_HPP
