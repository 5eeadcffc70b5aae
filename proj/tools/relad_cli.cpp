// Command-line surface of the toolkit: dataset synthesis, rule mining,
// scheme training, attacks, robustness analysis and normalization.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relad/attacks.hpp"
#include "relad/errors.hpp"
#include "relad/eval.hpp"
#include "relad/io.hpp"
#include "relad/normalizer.hpp"
#include "relad/oracle.hpp"
#include "relad/ruleminer.hpp"
#include "relad/synth.hpp"
#include "relad/training.hpp"

namespace {

using namespace relad;

std::size_t infer_dimension(const LabeledDataset& data, const RelationSpec& spec,
                            std::size_t override_dim) {
    if (override_dim > 0) return override_dim;
    std::size_t dim = data.dimension;
    const std::vector<std::size_t> support = spec.coordinate_support();
    if (!support.empty()) dim = std::max(dim, support.back() + 1);
    for (const auto& [from, to] : spec.explicit_edges) dim = std::max(dim, from.dimension());
    return dim;
}

LabeledDataset load_data(const std::string& path, const RelationSpec& spec,
                         std::size_t override_dim) {
    LabeledDataset probe = load_dataset_file(path);
    const std::size_t dim = infer_dimension(probe, spec, override_dim);
    if (dim == probe.dimension) return probe;
    return load_dataset_file(path, dim);
}

// Which part of the relation the normalizer covers; the rest is the
// residual attack surface.
struct NormalizeSplit {
    Normalizer normalizer = Normalizer::identity();
    RelationSpec residual;
};

NormalizeSplit make_split(const RelationSpec& spec, const std::string& subset,
                          const std::vector<FeatureVector>& domain) {
    NormalizeSplit split;
    if (subset == "none") {
        split.residual = spec;
    } else if (subset == "equivalence") {
        split.normalizer = Normalizer::equivalence(spec.equivalence_groups);
        split.residual.additive = spec.additive;
        split.residual.explicit_edges = spec.explicit_edges;
    } else if (subset == "full") {
        split.normalizer = Normalizer::for_spec(spec, domain);
    } else {
        throw InvalidConfig("--normalize-subset must be none, equivalence or full");
    }
    return split;
}

std::vector<std::size_t> parse_layer_list(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) sizes.push_back(std::stoul(item));
    }
    return sizes;
}

int run_gen_data(const SynthConfig& cfg, std::uint64_t seed, const std::string& out_path,
                 const std::string& relation_path) {
    const SynthData synth = synth_dataset(cfg, seed);
    save_dataset_file(out_path, synth.data);
    if (!relation_path.empty()) {
        save_json_file(relation_path, relation_to_json(synth.relation));
    }
    std::cout << "wrote " << synth.data.size() << " samples to " << out_path << "\n";
    return 0;
}

int run_mine_rules(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw Error("cannot open " + in_path);
    const EquivalenceGroupSet groups = extract_groups(read_api_csv(in));
    save_json_file(out_path, relation_to_json(groups_to_relation(groups)));
    std::cout << "mined " << groups.size() << " equivalence groups\n";
    return 0;
}

int run_train(const std::string& data_path, const std::string& relation_path,
              const std::string& scheme_name, const TrainConfig& base_cfg,
              const std::string& subset, const std::string& arch,
              const std::string& hidden, std::size_t dim, const std::string& out_path) {
    const RelationSpec spec =
        relation_path.empty() ? RelationSpec{} : load_relation_file(relation_path);
    const LabeledDataset data = load_data(data_path, spec, dim);

    TrainConfig cfg = base_cfg;
    cfg.scheme = parse_scheme(scheme_name);
    const std::string effective_subset =
        subset.empty() ? (cfg.scheme == TrainScheme::unified ? "equivalence" : "full") : subset;
    const NormalizeSplit split = make_split(spec, effective_subset, data.inputs);

    std::unique_ptr<Model> model;
    if (arch == "linear") {
        model = std::make_unique<LinearModel>(data.dimension);
    } else if (arch == "mlp") {
        std::vector<std::size_t> sizes{data.dimension};
        for (std::size_t h : parse_layer_list(hidden)) sizes.push_back(h);
        sizes.push_back(data.num_labels);
        model = std::make_unique<MlpModel>(sizes);
    } else {
        throw InvalidConfig("--arch must be mlp or linear");
    }

    const RelationSpec* attack_relation = nullptr;
    const Normalizer* normalizer = nullptr;
    if (cfg.scheme == TrainScheme::adversarial) {
        attack_relation = &spec;
    } else if (cfg.scheme == TrainScheme::unified) {
        attack_relation = &split.residual;
        normalizer = &split.normalizer;
    } else if (cfg.scheme == TrainScheme::np) {
        normalizer = &split.normalizer;
    }
    train(*model, data, cfg, attack_relation, normalizer);
    save_json_file(out_path, model_to_json(*model));

    double clean_accuracy = 0.0;
    if (normalizer != nullptr) {
        const NormalizedClassifier pipeline(*model, *normalizer);
        clean_accuracy = accuracy(pipeline, data);
    } else {
        clean_accuracy = accuracy(*model, data);
    }
    std::cout << scheme_name << " training done; accuracy " << clean_accuracy * 100.0
              << "% on the training data\n";
    return 0;
}

int run_attack(const std::string& algo, int k, int m, const std::string& relation_path,
               const std::string& model_path, const std::string& data_path,
               std::size_t dim, const std::string& out_path) {
    const RelationSpec spec = load_relation_file(relation_path);
    const std::unique_ptr<Model> model = load_model_file(model_path);
    const LabeledDataset data = load_data(data_path, spec, dim);
    const Partition partition = per_group_partition(spec);

    std::vector<AttackConfig> suite_configs;
    if (algo == "suite") {
        suite_configs.push_back({AttackConfig::Algo::exhaustive, 0, 0});
        suite_configs.push_back({AttackConfig::Algo::greedy_grad, k, m});
        suite_configs.push_back({AttackConfig::Algo::greedy_group, k, 0});
    }

    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    std::size_t successes = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const FeatureVector& x = data.inputs[i];
        const int y = data.labels[i];
        AttackResult result;
        if (algo == "exhaustive") {
            result = exhaustive_attack(*model, spec, x, y);
        } else if (algo == "group") {
            result = greedy_by_group(*model, partition, x, y, k);
        } else if (algo == "grad") {
            result = greedy_by_grad(*model, spec, x, y, m, k);
        } else if (algo == "suite") {
            result = attack_suite(*model, spec, x, y, suite_configs, &partition).best;
        } else {
            throw InvalidConfig("--algo must be exhaustive, group, grad or suite");
        }
        if (result.success) ++successes;

        nlohmann::json record;
        record["x"] = x.to_string();
        record["y"] = y;
        record["adversarial"] = result.adversarial.to_string();
        record["loss"] = result.loss;
        record["success"] = result.success;
        nlohmann::json moves = nlohmann::json::array();
        for (const FeatureVector& move : result.moves) moves.push_back(move.to_string());
        record["moves"] = std::move(moves);
        out << record.dump() << "\n";
    }
    std::cout << successes << "/" << data.size() << " inputs misclassified under " << algo
              << "\n";
    return 0;
}

int run_eval(const std::string& model_path, const std::string& data_path,
             const std::string& relation_path, const std::string& subset, int k, int m,
             std::uint64_t seed, std::size_t dim, const std::string& out_path,
             bool print_table) {
    const RelationSpec spec = load_relation_file(relation_path);
    const std::unique_ptr<Model> model = load_model_file(model_path);
    const LabeledDataset data = load_data(data_path, spec, dim);
    const NormalizeSplit split = make_split(spec, subset, data.inputs);

    EvalOptions options;
    options.attacks.push_back({AttackConfig::Algo::greedy_grad, k, m});
    options.attacks.push_back({AttackConfig::Algo::greedy_group, k, 0});
    options.seed = seed;
    std::ostringstream echo;
    echo << "model=" << model_path << " data=" << data_path << " relation=" << relation_path
         << " normalize-subset=" << subset << " k=" << k << " m=" << m;
    options.config_echo = echo.str();

    const Normalizer* normalizer = subset == "none" ? nullptr : &split.normalizer;
    const EvalReport report = evaluate(*model, data, spec, normalizer, options);
    if (!out_path.empty()) save_json_file(out_path, report_to_json(report));
    if (print_table || out_path.empty()) std::cout << report_table(report);
    return 0;
}

int run_analyze(const std::string& dist_path, const std::string& relation_path,
                const std::string& model_path, const std::string& edge_text) {
    const RelationSpec spec = load_relation_file(relation_path);
    const FiniteDistribution dist = distribution_from_json(load_json_file(dist_path));
    const ExplicitGraph graph = build_graph(spec, dist.inputs);

    std::cout << "nodes: " << graph.node_count() << "\n";
    std::cout << "reversible: " << (is_reversible(graph) ? "yes" : "no") << "\n";
    const ComponentLabeling optimal = optimal_robust_accuracy(graph, dist);
    std::cout << "optimal robust accuracy: " << optimal.value << " over "
              << optimal.component_labels.size() << " components\n";

    if (!model_path.empty()) {
        const std::unique_ptr<Model> model = load_model_file(model_path);
        const LabelFn f = [&](const FeatureVector& x) { return model->predict(x); };
        std::cout << "robustness: " << robustness(f, graph, dist) << "\n";
        std::cout << "robust accuracy: " << robust_accuracy(f, graph, dist) << "\n";
    }
    if (!edge_text.empty()) {
        const std::size_t colon = edge_text.find(':');
        if (colon == std::string::npos) {
            throw InvalidConfig("--edge expects fromBits:toBits");
        }
        const FeatureVector from = FeatureVector::from_string(edge_text.substr(0, colon));
        const FeatureVector to = FeatureVector::from_string(edge_text.substr(colon + 1));
        std::cout << "trade-off delta for extra edge " << edge_text << ": "
                  << tradeoff_delta(graph, from, to, dist) << "\n";
    }
    return 0;
}

int run_normalize(const std::string& data_path, const std::string& relation_path,
                  const std::string& subset, std::size_t dim, const std::string& out_path) {
    const RelationSpec spec = load_relation_file(relation_path);
    LabeledDataset data = load_data(data_path, spec, dim);
    const NormalizeSplit split = make_split(spec, subset, data.inputs);
    for (FeatureVector& x : data.inputs) x = split.normalizer(x);
    save_dataset_file(out_path, data);
    std::cout << "normalized " << data.size() << " samples into " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust learning toolkit for relational attack models"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string relation_path;
    std::string out_path;
    std::size_t dim = 0;

    // gen-data
    SynthConfig synth_cfg;
    auto* gen = app.add_subcommand("gen-data", "Generate a synthetic detection dataset");
    gen->add_option("--d", synth_cfg.dimension, "Feature dimension");
    gen->add_option("--n", synth_cfg.samples, "Sample count");
    gen->add_option("--groups", synth_cfg.group_count, "Equivalence group count");
    gen->add_option("--group-size", synth_cfg.group_size, "Members per group");
    gen->add_option("--spurious", synth_cfg.spurious_count, "Benign-leaning additive features");
    gen->add_option("--noise", synth_cfg.noise_rate, "Label noise rate in [0, 0.5)");
    gen->add_option("--rule-seed", synth_cfg.label_rule_seed, "Hidden label rule seed");
    gen->add_option("--seed", seed, "Sampling seed");
    gen->add_option("--out", out_path, "Dataset output path (JSON lines)")->required();
    gen->add_option("--relation", relation_path, "Ground-truth relation output path");

    // mine-rules
    std::string csv_path;
    auto* mine = app.add_subcommand("mine-rules", "Extract equivalent API groups from a CSV");
    mine->add_option("--in", csv_path, "CSV with library,api,feature_id rows")->required();
    mine->add_option("--out", out_path, "Relation spec output path")->required();

    // train
    TrainConfig train_cfg;
    std::string scheme = "natural";
    std::string subset;
    std::string arch = "mlp";
    std::string hidden = "32,32,32";
    std::string data_path;
    auto* tr = app.add_subcommand("train", "Train a detector under one of the four schemes");
    tr->add_option("--data", data_path, "Training dataset")->required();
    tr->add_option("--relation", relation_path, "Relation spec path");
    tr->add_option("--scheme", scheme, "natural | np | adversarial | unified");
    tr->add_option("--epochs", train_cfg.epochs, "Training epochs");
    tr->add_option("--lr", train_cfg.learning_rate, "Learning rate");
    tr->add_option("--batch", train_cfg.batch_size, "Mini-batch size");
    tr->add_option("--seed", train_cfg.seed, "Init and shuffle seed");
    tr->add_option("--normalize-subset", subset,
                   "Relation part to normalize: none | equivalence | full");
    tr->add_option("--attack-k", train_cfg.attack_iterations, "In-loop attack iterations");
    tr->add_option("--attack-m", train_cfg.attack_moves, "In-loop attack moves per iteration");
    tr->add_option("--arch", arch, "mlp | linear");
    tr->add_option("--hidden", hidden, "Comma-separated hidden layer sizes");
    tr->add_option("--dim", dim, "Feature dimension override");
    tr->add_option("--out", out_path, "Model checkpoint output path")->required();

    // attack
    std::string algo = "suite";
    std::string model_path;
    int attack_k = 4;
    int attack_m = 8;
    auto* at = app.add_subcommand("attack", "Attack a trained model sample by sample");
    at->add_option("--algo", algo, "exhaustive | group | grad | suite");
    at->add_option("--k", attack_k, "Iteration budget");
    at->add_option("--m", attack_m, "Moves per iteration (grad)");
    at->add_option("--relation", relation_path, "Relation spec path")->required();
    at->add_option("--model", model_path, "Model checkpoint")->required();
    at->add_option("--data", data_path, "Dataset to attack")->required();
    at->add_option("--dim", dim, "Feature dimension override");
    at->add_option("--out", out_path, "Attack records output (JSON lines)")->required();

    // eval
    std::string eval_subset = "none";
    bool table = false;
    auto* ev = app.add_subcommand("eval", "Clean and under-attack error rates");
    ev->add_option("--model", model_path, "Model checkpoint")->required();
    ev->add_option("--data", data_path, "Evaluation dataset")->required();
    ev->add_option("--relation", relation_path, "Relation spec path")->required();
    ev->add_option("--normalize-subset", eval_subset,
                   "Relation part normalized before prediction");
    ev->add_option("--attack-k", attack_k, "Attack iteration budget");
    ev->add_option("--attack-m", attack_m, "Attack moves per iteration");
    ev->add_option("--seed", seed, "Report seed field");
    ev->add_option("--dim", dim, "Feature dimension override");
    ev->add_option("--out", out_path, "Report output path (JSON)");
    ev->add_flag("--table", table, "Print the two-row rate table");

    // analyze
    std::string dist_path;
    std::string edge_text;
    auto* an = app.add_subcommand("analyze", "Exact robustness quantities of a distribution");
    an->add_option("--dist", dist_path, "Distribution file (JSON)")->required();
    an->add_option("--relation", relation_path, "Relation spec path")->required();
    an->add_option("--model", model_path, "Optional model checkpoint");
    an->add_option("--edge", edge_text, "Extra edge fromBits:toBits for the trade-off");

    // normalize
    std::string norm_subset = "full";
    auto* no = app.add_subcommand("normalize", "Rewrite a dataset into normal forms");
    no->add_option("--data", data_path, "Dataset path")->required();
    no->add_option("--relation", relation_path, "Relation spec path")->required();
    no->add_option("--normalize-subset", norm_subset, "Relation part to normalize");
    no->add_option("--dim", dim, "Feature dimension override");
    no->add_option("--out", out_path, "Normalized dataset output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen_data(synth_cfg, seed, out_path, relation_path);
        if (mine->parsed()) return run_mine_rules(csv_path, out_path);
        if (tr->parsed()) {
            return run_train(data_path, relation_path, scheme, train_cfg, subset, arch,
                             hidden, dim, out_path);
        }
        if (at->parsed()) {
            return run_attack(algo, attack_k, attack_m, relation_path, model_path, data_path,
                              dim, out_path);
        }
        if (ev->parsed()) {
            return run_eval(model_path, data_path, relation_path, eval_subset, attack_k,
                            attack_m, seed, dim, out_path, table);
        }
        if (an->parsed()) return run_analyze(dist_path, relation_path, model_path, edge_text);
        if (no->parsed()) {
            return run_normalize(data_path, relation_path, norm_subset, dim, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
