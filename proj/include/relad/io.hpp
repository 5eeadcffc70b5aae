#ifndef RELAD_IO_HPP
#define RELAD_IO_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "relad/models.hpp"
#include "relad/oracle.hpp"
#include "relad/relation.hpp"

namespace relad {

// Relation spec: {"explicit_edges": [[bits, bits], ...], "additive": [ids],
// "equivalence_groups": [[ids], ...]}; all keys optional.
RelationSpec relation_from_json(const nlohmann::json& j);
nlohmann::json relation_to_json(const RelationSpec& spec);

// Dataset: JSON lines {"features": [active ids], "label": 0|1}.  The
// dimension is taken from the override or inferred as max id + 1.
LabeledDataset read_dataset_jsonl(std::istream& in,
                                  std::optional<std::size_t> dimension = std::nullopt);
void write_dataset_jsonl(std::ostream& out, const LabeledDataset& data);

// Distribution: [{"x": bits, "mu": p, "eta": {"label": p, ...}}, ...].
FiniteDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const FiniteDistribution& dist);

// Model checkpoint: architecture descriptor plus the flat parameter array in
// row-major order.
std::unique_ptr<Model> model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const Model& model);

// File conveniences.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);
RelationSpec load_relation_file(const std::string& path);
LabeledDataset load_dataset_file(const std::string& path,
                                 std::optional<std::size_t> dimension = std::nullopt);
void save_dataset_file(const std::string& path, const LabeledDataset& data);
std::unique_ptr<Model> load_model_file(const std::string& path);

}  // namespace relad

#endif  // RELAD_IO_HPP
