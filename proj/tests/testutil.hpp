#ifndef RELAD_TESTS_TESTUTIL_HPP
#define RELAD_TESTS_TESTUTIL_HPP

#include <random>
#include <vector>

#include "relad/feature_vector.hpp"
#include "relad/models.hpp"
#include "relad/oracle.hpp"
#include "relad/relation.hpp"

namespace relad::testutil {

inline FeatureVector fv(const char* bits) { return FeatureVector::from_string(bits); }

/// Every vector of the given dimension, in lexicographic order.
inline std::vector<FeatureVector> full_cube(std::size_t dimension) {
    std::vector<FeatureVector> nodes;
    const std::size_t total = std::size_t{1} << dimension;
    for (std::size_t value = 0; value < total; ++value) {
        FeatureVector v(dimension);
        for (std::size_t bit = 0; bit < dimension; ++bit) {
            // Lexicographic: coordinate 0 is the most significant digit.
            v.set(bit, (value >> (dimension - 1 - bit)) & 1u);
        }
        nodes.push_back(std::move(v));
    }
    return nodes;
}

/// Distinct nodes for graph instances: the first `count` cube points.
inline std::vector<FeatureVector> enumerated_nodes(std::size_t count, std::size_t dimension) {
    std::vector<FeatureVector> all = full_cube(dimension);
    all.resize(count);
    return all;
}

inline FeatureVector random_vector(std::size_t dimension, std::mt19937_64& rng) {
    FeatureVector v(dimension);
    for (std::size_t i = 0; i < dimension; ++i) v.set(i, (rng() & 1u) != 0);
    return v;
}

/// Random directed graph over the first `node_count` cube points.
inline ExplicitGraph random_graph(std::size_t node_count, double edge_prob,
                                  std::mt19937_64& rng) {
    std::size_t dimension = 1;
    while ((std::size_t{1} << dimension) < node_count) ++dimension;
    const std::vector<FeatureVector> nodes = enumerated_nodes(node_count, dimension);
    RelationSpec spec;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t u = 0; u < node_count; ++u) {
        for (std::size_t v = 0; v < node_count; ++v) {
            if (u != v && unit(rng) < edge_prob) {
                spec.explicit_edges.emplace_back(nodes[u], nodes[v]);
            }
        }
    }
    return build_graph(spec, nodes);
}

/// Random distribution with small-integer masses, exactly normalized rows.
inline FiniteDistribution random_distribution(const std::vector<FeatureVector>& inputs,
                                              std::size_t num_labels,
                                              std::mt19937_64& rng) {
    FiniteDistribution dist;
    dist.inputs = inputs;
    dist.num_labels = num_labels;
    std::uniform_int_distribution<int> weight(1, 12);
    std::vector<int> masses;
    int mass_total = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        masses.push_back(weight(rng));
        mass_total += masses.back();
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        dist.mass.push_back(static_cast<double>(masses[i]) / mass_total);
        std::vector<int> row(num_labels);
        int row_total = 0;
        for (std::size_t l = 0; l < num_labels; ++l) {
            row[l] = weight(rng);
            row_total += row[l];
        }
        std::vector<double> probs(num_labels);
        for (std::size_t l = 0; l < num_labels; ++l) {
            probs[l] = static_cast<double>(row[l]) / row_total;
        }
        dist.label_probs.push_back(std::move(probs));
    }
    return dist;
}

/// Instance for preservation checks: a relation, a reversible sub-relation
/// of it over the same nodes, and a random binary-label distribution.
struct UnificationInstance {
    std::vector<FeatureVector> nodes;
    RelationSpec full;
    RelationSpec subset;
    FiniteDistribution dist;
};

inline UnificationInstance random_unification_instance(std::mt19937_64& rng,
                                                       std::size_t max_nodes = 10) {
    std::uniform_int_distribution<std::size_t> node_dist(2, max_nodes);
    const std::size_t count = node_dist(rng);
    std::size_t dimension = 1;
    while ((std::size_t{1} << dimension) < count) ++dimension;

    UnificationInstance inst;
    inst.nodes = enumerated_nodes(count, dimension);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // The sub-relation is symmetric by construction, hence reversible.
    for (std::size_t u = 0; u < count; ++u) {
        for (std::size_t v = u + 1; v < count; ++v) {
            if (unit(rng) < 0.18) {
                inst.subset.explicit_edges.emplace_back(inst.nodes[u], inst.nodes[v]);
                inst.subset.explicit_edges.emplace_back(inst.nodes[v], inst.nodes[u]);
            }
        }
    }
    inst.full = inst.subset;
    for (std::size_t u = 0; u < count; ++u) {
        for (std::size_t v = 0; v < count; ++v) {
            if (u != v && unit(rng) < 0.15) {
                inst.full.explicit_edges.emplace_back(inst.nodes[u], inst.nodes[v]);
            }
        }
    }
    inst.dist = random_distribution(inst.nodes, 2, rng);
    return inst;
}

/// Random small MLP with seeded parameters.
inline MlpModel random_mlp(std::mt19937_64& rng, std::size_t dimension, std::size_t labels) {
    std::uniform_int_distribution<std::size_t> hidden_layers(1, 3);
    std::uniform_int_distribution<std::size_t> hidden_units(2, 16);
    std::vector<std::size_t> sizes{dimension};
    const std::size_t depth = hidden_layers(rng);
    for (std::size_t i = 0; i < depth; ++i) sizes.push_back(hidden_units(rng));
    sizes.push_back(labels);
    MlpModel model(sizes);
    model.initialize(rng());
    return model;
}

}  // namespace relad::testutil

#endif  // RELAD_TESTS_TESTUTIL_HPP
