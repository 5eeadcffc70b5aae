#include "relad/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "relad/errors.hpp"

namespace relad {

using nlohmann::json;

RelationSpec relation_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("relation spec must be a JSON object");
    RelationSpec spec;
    if (j.contains("explicit_edges")) {
        for (const auto& pair : j.at("explicit_edges")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError("explicit edge must be a [from, to] pair");
            }
            spec.explicit_edges.emplace_back(
                FeatureVector::from_string(pair.at(0).get<std::string>()),
                FeatureVector::from_string(pair.at(1).get<std::string>()));
        }
    }
    if (j.contains("additive")) {
        spec.additive = j.at("additive").get<std::vector<std::size_t>>();
        std::sort(spec.additive.begin(), spec.additive.end());
        spec.additive.erase(std::unique(spec.additive.begin(), spec.additive.end()),
                            spec.additive.end());
    }
    if (j.contains("equivalence_groups")) {
        spec.equivalence_groups =
            j.at("equivalence_groups").get<std::vector<std::vector<std::size_t>>>();
        for (auto& group : spec.equivalence_groups) std::sort(group.begin(), group.end());
    }
    spec.validate();
    return spec;
}

json relation_to_json(const RelationSpec& spec) {
    json j = json::object();
    if (!spec.explicit_edges.empty()) {
        json edges = json::array();
        for (const auto& [from, to] : spec.explicit_edges) {
            edges.push_back(json::array({from.to_string(), to.to_string()}));
        }
        j["explicit_edges"] = std::move(edges);
    }
    if (!spec.additive.empty()) j["additive"] = spec.additive;
    if (!spec.equivalence_groups.empty()) j["equivalence_groups"] = spec.equivalence_groups;
    return j;
}

LabeledDataset read_dataset_jsonl(std::istream& in, std::optional<std::size_t> dimension) {
    LabeledDataset data;
    std::vector<std::vector<std::size_t>> rows;
    std::size_t max_id = 0;
    bool any_feature = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const json j = json::parse(line);
        rows.push_back(j.at("features").get<std::vector<std::size_t>>());
        data.labels.push_back(j.at("label").get<int>());
        for (std::size_t id : rows.back()) {
            max_id = std::max(max_id, id);
            any_feature = true;
        }
    }
    data.dimension = dimension.value_or(any_feature ? max_id + 1 : 0);
    for (const auto& row : rows) {
        data.inputs.push_back(FeatureVector::from_active(data.dimension, row));
    }
    const int max_label =
        data.labels.empty() ? 1 : *std::max_element(data.labels.begin(), data.labels.end());
    data.num_labels = static_cast<std::size_t>(std::max(1, max_label)) + 1;
    data.validate();
    return data;
}

void write_dataset_jsonl(std::ostream& out, const LabeledDataset& data) {
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        json j;
        j["features"] = data.inputs[i].active_features();
        j["label"] = data.labels[i];
        out << j.dump() << '\n';
    }
}

FiniteDistribution distribution_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("distribution must be a JSON array");
    FiniteDistribution dist;
    std::size_t max_label = 1;
    std::vector<std::map<int, double>> rows;
    for (const auto& entry : j) {
        dist.inputs.push_back(FeatureVector::from_string(entry.at("x").get<std::string>()));
        dist.mass.push_back(entry.at("mu").get<double>());
        std::map<int, double> eta;
        for (const auto& [key, value] : entry.at("eta").items()) {
            const int label = std::stoi(key);
            if (label < 0) throw ParseError("negative label in distribution");
            eta[label] = value.get<double>();
            max_label = std::max(max_label, static_cast<std::size_t>(label));
        }
        rows.push_back(std::move(eta));
    }
    dist.num_labels = max_label + 1;
    for (const auto& row : rows) {
        std::vector<double> probs(dist.num_labels, 0.0);
        for (const auto& [label, p] : row) probs[static_cast<std::size_t>(label)] = p;
        dist.label_probs.push_back(std::move(probs));
    }
    dist.validate();
    return dist;
}

json distribution_to_json(const FiniteDistribution& dist) {
    json j = json::array();
    for (std::size_t i = 0; i < dist.inputs.size(); ++i) {
        json eta = json::object();
        for (std::size_t l = 0; l < dist.num_labels; ++l) {
            eta[std::to_string(l)] = dist.label_probs[i][l];
        }
        j.push_back({{"x", dist.inputs[i].to_string()},
                     {"mu", dist.mass[i]},
                     {"eta", std::move(eta)}});
    }
    return j;
}

std::unique_ptr<Model> model_from_json(const json& j) {
    const std::string kind = j.at("type").get<std::string>();
    std::unique_ptr<Model> model;
    if (kind == "linear") {
        model = std::make_unique<LinearModel>(j.at("dimension").get<std::size_t>());
    } else if (kind == "mlp") {
        model = std::make_unique<MlpModel>(j.at("layers").get<std::vector<std::size_t>>());
    } else {
        throw ParseError("unknown model type: " + kind);
    }
    const std::vector<double> params = j.at("params").get<std::vector<double>>();
    model->set_parameters(params);
    return model;
}

json model_to_json(const Model& model) {
    json j;
    j["type"] = model.kind();
    if (const auto* mlp = dynamic_cast<const MlpModel*>(&model)) {
        j["layers"] = mlp->layer_sizes();
    } else {
        j["dimension"] = model.dimension();
    }
    j["params"] = model.parameters();
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
}

RelationSpec load_relation_file(const std::string& path) {
    return relation_from_json(load_json_file(path));
}

LabeledDataset load_dataset_file(const std::string& path,
                                 std::optional<std::size_t> dimension) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_dataset_jsonl(in, dimension);
}

void save_dataset_file(const std::string& path, const LabeledDataset& data) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_dataset_jsonl(out, data);
}

std::unique_ptr<Model> load_model_file(const std::string& path) {
    return model_from_json(load_json_file(path));
}

}  // namespace relad
