#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "siso/apps.hpp"
#include "siso/certificates.hpp"
#include "siso/reduction.hpp"

namespace siso {
namespace io {

using nlohmann::json;

json gens_to_json(const GenSet &g);
GenSet gens_from_json(const json &j);

json partition_to_json(const Partition &p);
Partition partition_from_json(const json &j);

json sequence_to_json(const PartitionSequence &s);

json iso_result_to_json(const IsoResult &r);

// instance JSON: {"n", "sigma", "x", "y", "group", "window"?, "sequence"?, "d"?}
struct ParsedInstance {
  StringInstance inst;
  PartitionSequence seq;
  std::vector<std::string> sigma;
};
ParsedInstance instance_from_json(const json &j);

json structure_to_json(const RelStructure &s);
RelStructure structure_from_json(const json &j);

// graph files: JSON {"n","edges"}, DIMACS-like "p edge n m" or plain
// 1-indexed "u v" lines
Graph graph_from_text(const std::string &text);
Graph graph_from_file(const std::string &path);
json graph_to_json(const Graph &g);

Hypergraph hypergraph_from_json(const json &j);

json cert_outcome_to_json(const CertOutcome &c);
json classification_to_json(const PrimitiveClassification &c);
json validation_report_to_json(const AlmostDAryReport &r);
json augmented_to_json(const AugmentedInstance &a,
                       const std::vector<std::string> &sigma);

std::string read_file(const std::string &path);

} // namespace io
} // namespace siso
