#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cfgsim/errors.hpp"
#include "cfgsim/ged.hpp"
#include "cfgsim/graph.hpp"

namespace cfgsim {

// One labeled training example: a graph pair, its ground-truth edit
// distance, and the similarity derived from it.
struct GraphPairRecord {
  LabeledCfg graph_1;
  LabeledCfg graph_2;
  double ged = 0.0;
  double similarity = 1.0;
  Provenance provenance = Provenance::exact;

  static GraphPairRecord make(LabeledCfg g1, LabeledCfg g2, double ged,
                              Provenance provenance) {
    GraphPairRecord r;
    r.similarity = normalize_similarity(ged, g1.node_count(), g2.node_count());
    r.graph_1 = std::move(g1);
    r.graph_2 = std::move(g2);
    r.ged = ged;
    r.provenance = provenance;
    return r;
  }

  bool operator==(const GraphPairRecord& other) const = default;
};

inline nlohmann::json graph_to_json(const LabeledCfg& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [s, d] : g.edges) edges.push_back({s, d});
  return {{"labels", g.labels}, {"edges", edges}};
}

inline LabeledCfg graph_from_json(const nlohmann::json& j,
                                  const std::string& where) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("edges"))
    throw DataError(where + ": graph must be an object with labels and edges");
  LabeledCfg g;
  try {
    g.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw DataError(where + ": edge must be a [src, dst] pair");
      g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(where + ": " + ex.what());
  }
  auto violations = validate_cfg(g);
  if (!violations.empty()) {
    std::string msg = where + ":";
    for (const auto& v : violations) msg += " " + v + ";";
    throw DataError(msg);
  }
  return g;
}

inline nlohmann::json record_to_json(const GraphPairRecord& r) {
  return {{"graph_1", graph_to_json(r.graph_1)},
          {"graph_2", graph_to_json(r.graph_2)},
          {"ged", r.ged},
          {"provenance", to_string(r.provenance)}};
}

inline GraphPairRecord record_from_json(const nlohmann::json& j,
                                        std::size_t index) {
  const std::string where = "record " + std::to_string(index);
  if (!j.is_object())
    throw DataError(where + ": expected an object");
  for (const char* key : {"graph_1", "graph_2", "ged", "provenance"})
    if (!j.contains(key))
      throw DataError(where + ": missing field '" + key + "'");
  if (!j.at("ged").is_number())
    throw DataError(where + ": ged must be a number");
  const double ged = j.at("ged").get<double>();
  if (ged < 0)
    throw DataError(where + ": ged must be non-negative");
  auto g1 = graph_from_json(j.at("graph_1"), where + " graph_1");
  auto g2 = graph_from_json(j.at("graph_2"), where + " graph_2");
  Provenance prov;
  try {
    prov = provenance_from_string(j.at("provenance").get<std::string>());
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(where + ": " + ex.what());
  }
  return GraphPairRecord::make(std::move(g1), std::move(g2), ged, prov);
}

inline std::string serialize_pair_dataset(
    const std::vector<GraphPairRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(record_to_json(r));
  return arr.dump();
}

inline std::vector<GraphPairRecord> parse_pair_dataset(
    const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw DataError("pair dataset: no records");
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("pair dataset: malformed JSON: ") + ex.what());
  }
  if (!arr.is_array())
    throw DataError("pair dataset: top level must be a JSON array");
  if (arr.empty())
    throw DataError("pair dataset: no records");
  std::vector<GraphPairRecord> records;
  records.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    records.push_back(record_from_json(arr[i], i));
  return records;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file '" + path + "'");
  out << content;
}

inline std::vector<GraphPairRecord> read_pair_dataset(
    const std::string& path) {
  return parse_pair_dataset(read_file(path));
}

inline void write_pair_dataset(const std::vector<GraphPairRecord>& records,
                               const std::string& path) {
  write_file(path, serialize_pair_dataset(records));
}

inline LabeledCfg read_single_graph(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("graph file '" + path + "': " + ex.what());
  }
  return graph_from_json(j, "graph file '" + path + "'");
}

}  // namespace cfgsim
