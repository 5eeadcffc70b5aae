#ifndef RELAD_TRAINING_HPP
#define RELAD_TRAINING_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "relad/models.hpp"
#include "relad/normalizer.hpp"
#include "relad/relation.hpp"

namespace relad {

enum class TrainScheme { natural, np, adversarial, unified };

TrainScheme parse_scheme(const std::string& name);
std::string scheme_name(TrainScheme scheme);

/// Mini-batch gradient descent settings; given the same seed, training is
/// bit-for-bit reproducible.
struct TrainConfig {
    TrainScheme scheme = TrainScheme::natural;
    int epochs = 20;
    double learning_rate = 0.1;
    int batch_size = 32;
    std::uint64_t seed = 0;
    int attack_iterations = 2;  // K of the in-loop first-order attack
    int attack_moves = 4;       // m of the in-loop first-order attack

    void validate() const;
};

/**
 * Trains the model in place under one of four objectives:
 *   natural      loss(f, x, y)
 *   np           loss(f, N(x), y)
 *   adversarial  loss(f, A(x), y), A = first-order greedy over attack_relation
 *   unified      loss(f, A(N(x)), y), N over the declared sub-relation and A
 *                over the residual attack_relation
 * The in-loop attack is the first-order greedy one; exact per-group search is
 * kept out of training for cost.  Parameters are (re)initialized from the
 * config seed.
 */
void train(Model& model, const LabeledDataset& data, const TrainConfig& cfg,
           const RelationSpec* attack_relation = nullptr,
           const Normalizer* normalizer = nullptr,
           const std::function<void(int, double)>& on_epoch = {});

}  // namespace relad

#endif  // RELAD_TRAINING_HPP
