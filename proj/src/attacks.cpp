#include "relad/attacks.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <unordered_map>

#include "relad/errors.hpp"

namespace relad {

namespace {

bool flips_prediction(const Classifier& f, const FeatureVector& z, int label) {
    return f.predict(z) != label;
}

// Exact closure size for purely rule-structured specs whose additive bits
// avoid the group coordinates; nullopt when only enumeration can tell.
std::optional<std::size_t> rule_closure_size(const RelationSpec& spec,
                                             const FeatureVector& x, std::size_t cap) {
    if (!spec.explicit_edges.empty() || spec.hue_shift) return std::nullopt;
    std::set<std::size_t> group_coords;
    for (const auto& group : spec.equivalence_groups) {
        group_coords.insert(group.begin(), group.end());
    }
    for (std::size_t id : spec.additive) {
        if (group_coords.count(id)) return std::nullopt;
    }

    const std::size_t huge = cap + 1;
    std::size_t total = 1;
    const auto multiply = [&](std::size_t factor) {
        total = total > huge / factor ? huge : total * factor;
    };
    for (const auto& group : spec.equivalence_groups) {
        bool any = false;
        for (std::size_t id : group) any = any || (id < x.dimension() && x.get(id));
        if (any && group.size() < 63) multiply((std::size_t{1} << group.size()) - 1);
    }
    for (std::size_t id : spec.additive) {
        if (id < x.dimension() && !x.get(id)) multiply(2);
    }
    return total;
}

// Loss-maximizing element of the closure of x under one relation part.
// Returns false when the enumeration blows past the state cap.
bool part_argmax(const Classifier& f, const RelationSpec& part, const FeatureVector& x,
                 int label, std::size_t state_cap, FeatureVector& best_out) {
    if (const auto size = rule_closure_size(part, x, state_cap); size && *size > state_cap) {
        return false;
    }
    std::set<FeatureVector> seen{x};
    std::deque<FeatureVector> queue{x};
    FeatureVector best = x;
    double best_loss = f.nll_loss(x, label);
    while (!queue.empty()) {
        FeatureVector current = queue.front();
        queue.pop_front();
        for (const FeatureVector& z : atomic_moves(part, current)) {
            if (!seen.insert(z).second) continue;
            if (seen.size() > state_cap) return false;
            const double loss = f.nll_loss(z, label);
            if (loss > best_loss || (loss == best_loss && z < best)) {
                best = z;
                best_loss = loss;
            }
            queue.push_back(z);
        }
    }
    best_out = best;
    return true;
}

// Coordinate-ascent fallback: repeatedly take the single best improving
// move inside the part until none improves.
FeatureVector part_hill_climb(const Classifier& f, const RelationSpec& part,
                              const FeatureVector& x, int label) {
    FeatureVector current = x;
    double current_loss = f.nll_loss(current, label);
    const std::size_t max_steps = 4 * std::max<std::size_t>(1, x.dimension());
    for (std::size_t step = 0; step < max_steps; ++step) {
        FeatureVector best = current;
        double best_loss = current_loss;
        for (const FeatureVector& z : atomic_moves(part, current)) {
            const double loss = f.nll_loss(z, label);
            if (loss > best_loss || (loss == best_loss && best != current && z < best)) {
                best = z;
                best_loss = loss;
            }
        }
        if (best == current) break;
        current = best;
        current_loss = best_loss;
    }
    return current;
}

}  // namespace

Partition single_partition(const RelationSpec& spec) {
    Partition p;
    if (!spec.empty()) p.parts.push_back(spec);
    return p;
}

Partition per_group_partition(const RelationSpec& spec) {
    Partition p;
    for (const auto& group : spec.equivalence_groups) {
        RelationSpec part;
        part.equivalence_groups.push_back(group);
        p.parts.push_back(std::move(part));
    }
    if (!spec.additive.empty()) {
        RelationSpec part;
        part.additive = spec.additive;
        p.parts.push_back(std::move(part));
    }
    if (!spec.explicit_edges.empty()) {
        RelationSpec part;
        part.explicit_edges = spec.explicit_edges;
        p.parts.push_back(std::move(part));
    }
    return p;
}

void validate_partition(const Partition& partition) {
    std::set<std::size_t> taken;
    for (const RelationSpec& part : partition.parts) {
        if (part.hue_shift) {
            throw HueUnsupported("hue relation cannot take part in a feature partition");
        }
        for (std::size_t id : part.coordinate_support()) {
            if (!taken.insert(id).second) {
                throw OverlappingPartition("partition parts share coordinate " +
                                           std::to_string(id));
            }
        }
    }
}

AttackResult exhaustive_attack(const Classifier& f, const RelationSpec& spec,
                               const FeatureVector& x, int label,
                               const AttackLimits& limits) {
    if (const auto size = rule_closure_size(spec, x, limits.closure_cap);
        size && *size > limits.closure_cap) {
        throw DomainTooLarge("closure of " + std::to_string(*size - 1) +
                             "+ states exceeds cap of " +
                             std::to_string(limits.closure_cap));
    }
    std::unordered_map<FeatureVector, FeatureVector, FeatureVectorHash> parent;
    std::set<FeatureVector> seen{x};
    std::deque<FeatureVector> queue{x};

    FeatureVector best = x;
    double best_loss = f.nll_loss(x, label);
    while (!queue.empty()) {
        FeatureVector current = queue.front();
        queue.pop_front();
        for (const FeatureVector& z : atomic_moves(spec, current)) {
            if (!seen.insert(z).second) continue;
            if (seen.size() > limits.closure_cap) {
                throw DomainTooLarge("closure exceeds cap of " +
                                     std::to_string(limits.closure_cap));
            }
            parent.emplace(z, current);
            // First-encountered in BFS order wins ties, so strictly greater only.
            const double loss = f.nll_loss(z, label);
            if (loss > best_loss) {
                best = z;
                best_loss = loss;
            }
            queue.push_back(z);
        }
    }

    AttackResult result;
    result.adversarial = best;
    result.loss = best_loss;
    result.success = flips_prediction(f, best, label);
    std::vector<FeatureVector> path;
    for (FeatureVector v = best; v != x;) {
        path.push_back(v);
        v = parent.at(v);
    }
    std::reverse(path.begin(), path.end());
    result.moves = std::move(path);
    return result;
}

AttackResult greedy_by_group(const Classifier& f, const Partition& partition,
                             const FeatureVector& x, int label, int iterations,
                             const AttackLimits& limits) {
    if (iterations < 0) throw InvalidConfig("iteration count must be non-negative");
    validate_partition(partition);

    AttackResult result;
    FeatureVector current = x;
    for (int k = 0; k < iterations; ++k) {
        // Per-part optima are all taken against the same current input, then
        // merged over the disjoint coordinate supports.
        FeatureVector combined = current;
        for (const RelationSpec& part : partition.parts) {
            FeatureVector part_best = current;
            if (!part_argmax(f, part, current, label, limits.part_state_cap, part_best)) {
                part_best = part_hill_climb(f, part, current, label);
                ++result.group_budget_fallbacks;
            }
            for (std::size_t id : part.coordinate_support()) {
                if (id < combined.dimension()) combined.set(id, part_best.get(id));
            }
        }
        if (combined == current) break;
        current = combined;
        result.moves.push_back(current);
    }

    result.adversarial = current;
    result.loss = f.nll_loss(current, label);
    result.success = flips_prediction(f, current, label);
    return result;
}

AttackResult greedy_by_grad(const Classifier& f, const RelationSpec& spec,
                            const FeatureVector& x, int label,
                            int moves_per_iteration, int iterations) {
    if (iterations < 0 || moves_per_iteration < 0) {
        throw InvalidConfig("attack budget must be non-negative");
    }

    AttackResult result;
    FeatureVector current = x;
    for (int k = 0; k < iterations; ++k) {
        const std::vector<double> g = f.input_gradient(current, label);

        // First-order score of each move: sum of g over changed coordinates.
        struct Scored {
            double score;
            FeatureVector target;
        };
        std::vector<Scored> candidates;
        for (const FeatureVector& z : atomic_moves(spec, current)) {
            double score = 0.0;
            for (std::size_t i = 0; i < z.dimension(); ++i) {
                if (z.get(i) != current.get(i)) {
                    score += g[i] * ((z.get(i) ? 1.0 : 0.0) - (current.get(i) ? 1.0 : 0.0));
                }
            }
            if (score > 0.0) candidates.push_back({score, z});
        }
        std::sort(candidates.begin(), candidates.end(), [](const Scored& a, const Scored& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.target < b.target;
        });

        int applied = 0;
        std::set<std::size_t> modified;
        FeatureVector next = current;
        for (const Scored& cand : candidates) {
            if (applied >= moves_per_iteration) break;
            std::vector<std::size_t> changed;
            for (std::size_t i = 0; i < cand.target.dimension(); ++i) {
                if (cand.target.get(i) != current.get(i)) changed.push_back(i);
            }
            bool conflict = false;
            for (std::size_t i : changed) conflict = conflict || modified.count(i) > 0;
            if (conflict) continue;
            // The move must still be a legal step from the evolving vector;
            // two individually admissible edits can be jointly inadmissible.
            FeatureVector target = next;
            for (std::size_t i : changed) target.set(i, cand.target.get(i));
            const std::vector<FeatureVector> legal = atomic_moves(spec, next);
            if (!std::binary_search(legal.begin(), legal.end(), target)) continue;
            next = target;
            for (std::size_t i : changed) modified.insert(i);
            ++applied;
            result.moves.push_back(next);
        }
        if (applied == 0) break;
        current = next;
    }

    result.adversarial = current;
    result.loss = f.nll_loss(current, label);
    result.success = flips_prediction(f, current, label);
    return result;
}

std::string AttackConfig::name() const {
    switch (algo) {
        case Algo::exhaustive:
            return "exhaustive";
        case Algo::greedy_group:
            return "greedy_by_group(k=" + std::to_string(iterations) + ")";
        case Algo::greedy_grad:
            return "greedy_by_grad(k=" + std::to_string(iterations) +
                   ",m=" + std::to_string(moves) + ")";
    }
    return "unknown";
}

SuiteResult attack_suite(const Classifier& f, const RelationSpec& spec,
                         const FeatureVector& x, int label,
                         const std::vector<AttackConfig>& configs,
                         const Partition* partition, const AttackLimits& limits) {
    SuiteResult suite;
    suite.best.adversarial = x;
    suite.best.loss = f.nll_loss(x, label);
    suite.best.success = flips_prediction(f, x, label);

    Partition default_partition;
    const Partition* parts = partition;
    if (parts == nullptr) {
        default_partition = per_group_partition(spec);
        parts = &default_partition;
    }

    for (const AttackConfig& cfg : configs) {
        AttackResult run;
        switch (cfg.algo) {
            case AttackConfig::Algo::exhaustive:
                try {
                    run = exhaustive_attack(f, spec, x, label, limits);
                } catch (const DomainTooLarge&) {
                    continue;  // infeasible here; the other attacks still count
                }
                break;
            case AttackConfig::Algo::greedy_group:
                run = greedy_by_group(f, *parts, x, label, cfg.iterations, limits);
                break;
            case AttackConfig::Algo::greedy_grad:
                run = greedy_by_grad(f, spec, x, label, cfg.moves, cfg.iterations);
                break;
        }
        if (run.success) suite.best.success = true;
        if (run.loss > suite.best.loss) {
            const bool success = suite.best.success;
            suite.best = run;
            suite.best.success = success || run.success;
        }
        suite.per_attack.emplace_back(cfg.name(), std::move(run));
    }
    return suite;
}

}  // namespace relad
