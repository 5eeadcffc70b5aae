#include "relad/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "relad/errors.hpp"

namespace relad {

namespace {

using Rational = boost::multiprecision::cpp_rational;

/// Compensated (Kahan) accumulator for probability sums.
class KahanSum {
public:
    void add(double value) {
        const double y = value - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// Per-node mass and per-node-per-label mass, aligned to graph node ids.
struct NodeMass {
    std::vector<double> mu;
    std::vector<std::vector<double>> mu_eta;
    std::size_t num_labels = 2;
};

NodeMass align_distribution(const ExplicitGraph& graph, const FiniteDistribution& dist) {
    dist.validate();
    NodeMass mass;
    mass.num_labels = dist.num_labels;
    mass.mu.assign(graph.node_count(), 0.0);
    mass.mu_eta.assign(graph.node_count(), std::vector<double>(dist.num_labels, 0.0));
    for (std::size_t i = 0; i < dist.inputs.size(); ++i) {
        const int id = graph.index_of(dist.inputs[i]);
        if (id < 0) {
            throw NodeNotInDomain("distribution input not in graph domain: " +
                                  dist.inputs[i].to_string());
        }
        mass.mu[static_cast<std::size_t>(id)] += dist.mass[i];
        for (std::size_t l = 0; l < dist.num_labels; ++l) {
            mass.mu_eta[static_cast<std::size_t>(id)][l] += dist.mass[i] * dist.label_probs[i][l];
        }
    }
    return mass;
}

std::vector<std::vector<int>> all_closures(const ExplicitGraph& graph) {
    std::vector<std::vector<int>> closures(graph.node_count());
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        closures[v] = closure_ids(graph, static_cast<int>(v));
    }
    return closures;
}

bool constant_over(const std::vector<int>& labels, const std::vector<int>& ids) {
    for (int id : ids) {
        if (labels[static_cast<std::size_t>(id)] != labels[static_cast<std::size_t>(ids.front())]) {
            return false;
        }
    }
    return true;
}

// Robust accuracy of a total labeling, nodes visited in id order.
double labeling_robust_accuracy(const std::vector<int>& labels,
                                const std::vector<std::vector<int>>& closures,
                                const NodeMass& mass) {
    KahanSum sum;
    for (std::size_t v = 0; v < closures.size(); ++v) {
        if (!constant_over(labels, closures[v])) continue;
        sum.add(mass.mu_eta[v][static_cast<std::size_t>(labels[v])]);
    }
    return sum.value();
}

// Per-label mass totals of a node set, summed in ascending node order.
std::vector<double> label_mass(const std::vector<int>& members, const NodeMass& mass) {
    std::vector<double> totals(mass.num_labels, 0.0);
    for (std::size_t l = 0; l < mass.num_labels; ++l) {
        KahanSum sum;
        for (int v : members) sum.add(mass.mu_eta[static_cast<std::size_t>(v)][l]);
        totals[l] = sum.value();
    }
    return totals;
}

int argmax_lowest(const std::vector<double>& values) {
    int best = 0;
    for (std::size_t l = 1; l < values.size(); ++l) {
        if (values[l] > values[static_cast<std::size_t>(best)]) best = static_cast<int>(l);
    }
    return best;
}

std::vector<int> evaluate_labeling(const LabelFn& f, const ExplicitGraph& graph) {
    std::vector<int> labels(graph.node_count());
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        labels[v] = f(graph.node(static_cast<int>(v)));
    }
    return labels;
}

std::size_t checked_labeling_count(std::size_t bases, std::size_t positions) {
    constexpr std::size_t kMaxLabelings = std::size_t{1} << 16;
    std::size_t total = 1;
    for (std::size_t i = 0; i < positions; ++i) {
        if (total > kMaxLabelings / bases) {
            throw DomainTooLarge("labeling enumeration exceeds " +
                                 std::to_string(kMaxLabelings) + " candidates");
        }
        total *= bases;
    }
    return total;
}

}  // namespace

void FiniteDistribution::validate() const {
    if (mass.size() != inputs.size() || label_probs.size() != inputs.size()) {
        throw InvalidConfig("distribution arrays differ in length");
    }
    if (num_labels < 2) throw InvalidConfig("distribution needs at least 2 labels");
    KahanSum total;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (mass[i] < 0.0) throw InvalidConfig("negative probability mass");
        total.add(mass[i]);
        if (label_probs[i].size() != num_labels) {
            throw InvalidConfig("label probability row has wrong width");
        }
        KahanSum row;
        for (double p : label_probs[i]) {
            if (p < 0.0) throw InvalidConfig("negative label probability");
            row.add(p);
        }
        if (std::abs(row.value() - 1.0) > kProbTolerance) {
            throw InvalidConfig("label probabilities of " + inputs[i].to_string() +
                                " do not sum to 1");
        }
    }
    if (std::abs(total.value() - 1.0) > kProbTolerance) {
        throw InvalidConfig("input masses do not sum to 1");
    }
}

bool is_robust(const LabelFn& f, const ExplicitGraph& graph, const FeatureVector& x) {
    const int start = graph.require_index(x);
    const int reference = f(graph.node(start));
    for (int id : closure_ids(graph, start)) {
        if (f(graph.node(id)) != reference) return false;
    }
    return true;
}

double robustness(const LabelFn& f, const ExplicitGraph& graph,
                  const FiniteDistribution& dist) {
    const NodeMass mass = align_distribution(graph, dist);
    const std::vector<int> labels = evaluate_labeling(f, graph);
    const std::vector<std::vector<int>> closures = all_closures(graph);
    KahanSum sum;
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        if (constant_over(labels, closures[v])) sum.add(mass.mu[v]);
    }
    return sum.value();
}

double robust_accuracy(const LabelFn& f, const ExplicitGraph& graph,
                       const FiniteDistribution& dist) {
    const NodeMass mass = align_distribution(graph, dist);
    const std::vector<int> labels = evaluate_labeling(f, graph);
    return labeling_robust_accuracy(labels, all_closures(graph), mass);
}

ComponentLabeling optimal_robust_accuracy(const ExplicitGraph& graph,
                                          const FiniteDistribution& dist) {
    const NodeMass mass = align_distribution(graph, dist);
    const WccIndex components = wcc(graph);
    ComponentLabeling result;
    KahanSum total;
    for (const std::vector<int>& members : components.members) {
        const std::vector<double> totals = label_mass(members, mass);
        const int best = argmax_lowest(totals);
        result.component_labels.push_back(best);
        total.add(totals[static_cast<std::size_t>(best)]);
    }
    result.value = total.value();
    return result;
}

double tradeoff_delta(const ExplicitGraph& graph, const FeatureVector& from,
                      const FeatureVector& to, const FiniteDistribution& dist) {
    const int id_from = graph.index_of(from);
    const int id_to = graph.index_of(to);
    if (id_from < 0 || id_to < 0) {
        throw EdgeEndpointsMissing("trade-off edge endpoint not in graph domain");
    }
    const NodeMass mass = align_distribution(graph, dist);
    const WccIndex components = wcc(graph);
    const int comp_from = components.component_of[static_cast<std::size_t>(id_from)];
    const int comp_to = components.component_of[static_cast<std::size_t>(id_to)];

    const std::vector<double> mass_from =
        label_mass(components.members[static_cast<std::size_t>(comp_from)], mass);
    std::vector<double> mass_other(mass.num_labels, 0.0);
    if (comp_to != comp_from) {
        mass_other = label_mass(components.members[static_cast<std::size_t>(comp_to)], mass);
    }

    // Best accuracy of the merged component versus the two parts; the merged
    // per-label masses reuse the part sums so a shared majority label gives
    // an exact zero.
    double best_separate = mass_from[static_cast<std::size_t>(argmax_lowest(mass_from))] +
                           mass_other[static_cast<std::size_t>(argmax_lowest(mass_other))];
    double best_merged = 0.0;
    for (std::size_t l = 0; l < mass.num_labels; ++l) {
        best_merged = std::max(best_merged, mass_from[l] + mass_other[l]);
    }
    return best_merged - best_separate;
}

LabelingResult best_robust_labeling(const ExplicitGraph& graph,
                                    const FiniteDistribution& dist) {
    const std::size_t n = graph.node_count();
    if (n > 16) {
        throw DomainTooLarge("labeling search supports at most 16 nodes, got " +
                             std::to_string(n));
    }
    const NodeMass mass = align_distribution(graph, dist);
    checked_labeling_count(mass.num_labels, n);
    const std::vector<std::vector<int>> closures = all_closures(graph);

    LabelingResult best;
    best.labels.assign(n, 0);
    best.value = labeling_robust_accuracy(best.labels, closures, mass);

    std::vector<int> labels(n, 0);
    while (true) {
        // Mixed-radix increment, node 0 fastest.
        std::size_t pos = 0;
        while (pos < n) {
            labels[pos] += 1;
            if (static_cast<std::size_t>(labels[pos]) < mass.num_labels) break;
            labels[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
        const double value = labeling_robust_accuracy(labels, closures, mass);
        if (value > best.value) {
            best.value = value;
            best.labels = labels;
        }
    }
    return best;
}

bool verify_unification(const ExplicitGraph& full, const ExplicitGraph& reversible_subset,
                        const FiniteDistribution& dist) {
    // The two graphs must describe the same domain; map subset ids onto full ids.
    if (full.node_count() != reversible_subset.node_count()) {
        throw InvalidConfig("sub-relation graph has a different domain");
    }
    std::vector<int> to_full(reversible_subset.node_count());
    for (std::size_t v = 0; v < reversible_subset.node_count(); ++v) {
        const int id = full.index_of(reversible_subset.node(static_cast<int>(v)));
        if (id < 0) throw InvalidConfig("sub-relation node missing from full graph");
        to_full[v] = id;
    }
    for (std::size_t u = 0; u < reversible_subset.node_count(); ++u) {
        for (int v : reversible_subset.successors(static_cast<int>(u))) {
            if (!full.has_edge(to_full[u], to_full[static_cast<std::size_t>(v)])) {
                throw InvalidConfig("sub-relation edge missing from full relation");
            }
        }
    }
    if (!is_reversible(reversible_subset)) {
        throw NotReversible("sub-relation must be reversible");
    }

    const NodeMass mass = align_distribution(full, dist);
    const std::vector<std::vector<int>> closures = all_closures(full);
    const LabelingResult unconstrained = best_robust_labeling(full, dist);

    // Components of the sub-relation, as full-graph node ids.
    const WccIndex sub_components = wcc(reversible_subset);
    std::vector<std::vector<int>> comp_members;
    for (const std::vector<int>& members : sub_components.members) {
        std::vector<int> ids;
        for (int v : members) ids.push_back(to_full[static_cast<std::size_t>(v)]);
        std::sort(ids.begin(), ids.end());
        comp_members.push_back(std::move(ids));
    }

    // Best robust accuracy among classifiers constant per sub-component.
    checked_labeling_count(mass.num_labels, comp_members.size());
    std::vector<int> comp_labels(comp_members.size(), 0);
    std::vector<int> node_labels(full.node_count(), 0);
    double constrained_best = -1.0;
    while (true) {
        for (std::size_t c = 0; c < comp_members.size(); ++c) {
            for (int v : comp_members[c]) node_labels[static_cast<std::size_t>(v)] = comp_labels[c];
        }
        constrained_best = std::max(
            constrained_best, labeling_robust_accuracy(node_labels, closures, mass));
        std::size_t pos = 0;
        while (pos < comp_members.size()) {
            comp_labels[pos] += 1;
            if (static_cast<std::size_t>(comp_labels[pos]) < mass.num_labels) break;
            comp_labels[pos] = 0;
            ++pos;
        }
        if (pos == comp_members.size()) break;
    }

    // Majority construction from the brute-force witness: each sub-component
    // takes the most massive label among the labels the witness uses there.
    std::vector<int> constructed(full.node_count(), 0);
    for (const std::vector<int>& members : comp_members) {
        const std::vector<double> totals = label_mass(members, mass);
        std::vector<bool> used(mass.num_labels, false);
        for (int v : members) {
            used[static_cast<std::size_t>(
                unconstrained.labels[static_cast<std::size_t>(v)])] = true;
        }
        int pick = -1;
        for (std::size_t l = 0; l < mass.num_labels; ++l) {
            if (!used[l]) continue;
            if (pick < 0 || totals[l] > totals[static_cast<std::size_t>(pick)]) {
                pick = static_cast<int>(l);
            }
        }
        for (int v : members) constructed[static_cast<std::size_t>(v)] = pick;
    }
    const double constructed_value = labeling_robust_accuracy(constructed, closures, mass);

    return std::abs(constrained_best - unconstrained.value) <= kProbTolerance &&
           std::abs(constructed_value - unconstrained.value) <= kProbTolerance;
}

// ---------------------------------------------------------------------------
// Exact strict linear separability
// ---------------------------------------------------------------------------

namespace {

/**
 * Phase-I simplex over rationals deciding whether some nonnegative,
 * normalized combination of the rows sums to zero.  By Gordan's theorem no
 * such combination exists iff some u satisfies row . u > 0 for every row.
 */
bool zero_in_positive_hull(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t dims = rows.front().size();
    const std::size_t m = dims + 1;  // homogeneous equations plus normalization

    // Tableau columns: n combination weights, then m artificials.
    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(n + m, 0));
    std::vector<Rational> rhs(m, 0);
    for (std::size_t j = 0; j < dims; ++j) {
        for (std::size_t i = 0; i < n; ++i) tab[j][i] = rows[i][j];
    }
    for (std::size_t i = 0; i < n; ++i) tab[dims][i] = 1;
    rhs[dims] = 1;
    for (std::size_t r = 0; r < m; ++r) tab[r][n + r] = 1;

    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

    // Reduced costs for minimizing the artificial total.
    std::vector<Rational> reduced(n + m, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < m; ++r) reduced[j] -= tab[r][j];
    }

    while (true) {
        // Bland's rule: lowest-index column with negative reduced cost.
        std::size_t entering = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (reduced[j] < 0) {
                entering = j;
                break;
            }
        }
        if (entering == n + m) break;

        std::size_t leaving = m;
        Rational best_ratio = 0;
        for (std::size_t r = 0; r < m; ++r) {
            if (tab[r][entering] <= 0) continue;
            const Rational ratio = rhs[r] / tab[r][entering];
            if (leaving == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (leaving == m) {
            throw Error("separability tableau unbounded; inputs are malformed");
        }

        const Rational pivot = tab[leaving][entering];
        for (auto& cell : tab[leaving]) cell /= pivot;
        rhs[leaving] /= pivot;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leaving || tab[r][entering] == 0) continue;
            const Rational factor = tab[r][entering];
            for (std::size_t j = 0; j < n + m; ++j) tab[r][j] -= factor * tab[leaving][j];
            rhs[r] -= factor * rhs[leaving];
        }
        if (reduced[entering] != 0) {
            const Rational factor = reduced[entering];
            for (std::size_t j = 0; j < n + m; ++j) reduced[j] -= factor * tab[leaving][j];
        }
        basis[leaving] = entering;
    }

    // Minimum of the artificial total: sum of the artificials still basic.
    Rational remaining = 0;
    for (std::size_t r = 0; r < m; ++r) {
        if (basis[r] >= n) remaining += rhs[r];
    }
    return remaining == 0;
}

}  // namespace

bool linear_separability_check(const std::vector<int>& table, std::size_t arity) {
    if (arity > 16) {
        throw DomainTooLarge("separability check supports at most 16 coordinates");
    }
    const std::size_t expected = std::size_t{1} << arity;
    if (table.size() != expected) {
        throw TableIncomplete("truth table must list all " + std::to_string(expected) +
                              " rows, got " + std::to_string(table.size()));
    }
    for (int label : table) {
        if (label != 0 && label != 1) {
            throw TableIncomplete("truth table labels must be 0 or 1");
        }
    }

    // Row per input: sign * (coordinates, 1); strict feasibility of
    // row . (w, b) > 0 is exactly strict-sign agreement.
    std::vector<std::vector<Rational>> rows(expected, std::vector<Rational>(arity + 1, 0));
    for (std::size_t i = 0; i < expected; ++i) {
        const int sign = table[i] == 1 ? 1 : -1;
        for (std::size_t j = 0; j < arity; ++j) {
            rows[i][j] = ((i >> j) & 1u) != 0 ? sign : 0;
        }
        rows[i][arity] = sign;
    }
    return !zero_in_positive_hull(rows);
}

}  // namespace relad
