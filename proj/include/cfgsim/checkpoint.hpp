#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cfgsim/dataset.hpp"
#include "cfgsim/model.hpp"

// Versioned JSON checkpoint: model config, vocabulary in index order and
// every parameter tensor. Doubles are emitted in shortest round-trip
// form, so load -> predict reproduces saved-model outputs bit for bit.

namespace cfgsim {

constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  ModelConfig config;
  LabelVocabulary vocab;
  ModelParams params;
};

namespace detail {

inline nlohmann::json tensor_to_json(const Tensor& t) {
  return {{"rows", t.rows()}, {"cols", t.cols()}, {"data", t.values()}};
}

inline Tensor tensor_from_json(const nlohmann::json& j,
                               const std::string& name) {
  try {
    return Tensor::of(j.at("rows").get<int>(), j.at("cols").get<int>(),
                      j.at("data").get<std::vector<double>>(), true);
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("checkpoint tensor '" + name + "': " + ex.what());
  } catch (const NumericError& ex) {
    throw DataError("checkpoint tensor '" + name + "': " + ex.what());
  }
}

}  // namespace detail

inline std::string serialize_checkpoint(const Checkpoint& ckpt) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, tensor] : ckpt.params.named())
    params[name] = detail::tensor_to_json(tensor);
  nlohmann::json j = {
      {"format_version", kCheckpointVersion},
      {"config",
       {{"vocab_size", ckpt.config.vocab_size},
        {"sage_dims", ckpt.config.sage_dims},
        {"ntn_slices", ckpt.config.ntn_slices},
        {"histogram_bins", ckpt.config.histogram_bins},
        {"fc_dims", ckpt.config.fc_dims},
        {"seed", ckpt.config.seed}}},
      {"vocabulary", ckpt.vocab.known_labels()},
      {"params", params}};
  return j.dump();
}

inline Checkpoint parse_checkpoint(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("checkpoint: malformed JSON: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("format_version"))
    throw DataError("checkpoint: missing format_version");
  const int version = j.at("format_version").get<int>();
  if (version != kCheckpointVersion)
    throw DataError("checkpoint: unsupported format_version " +
                    std::to_string(version) + " (expected " +
                    std::to_string(kCheckpointVersion) + ")");

  Checkpoint ckpt;
  try {
    const auto& c = j.at("config");
    ckpt.config.vocab_size = c.at("vocab_size").get<int>();
    ckpt.config.sage_dims = c.at("sage_dims").get<std::vector<int>>();
    ckpt.config.ntn_slices = c.at("ntn_slices").get<int>();
    ckpt.config.histogram_bins = c.at("histogram_bins").get<int>();
    ckpt.config.fc_dims = c.at("fc_dims").get<std::vector<int>>();
    ckpt.config.seed = c.at("seed").get<std::uint64_t>();
    ckpt.vocab = LabelVocabulary::from_labels(
        j.at("vocabulary").get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("checkpoint: bad config: ") + ex.what());
  }
  ckpt.config.check();
  if (ckpt.vocab.size() != ckpt.config.vocab_size)
    throw DataError("checkpoint: vocabulary size disagrees with config");

  // materialize params with the right shapes, then fill from the file
  ckpt.params = ModelParams::init(ckpt.config);
  const auto& params_json = j.at("params");
  for (auto& [name, tensor] : ckpt.params.named()) {
    if (!params_json.contains(name))
      throw DataError("checkpoint: missing tensor '" + name + "'");
    Tensor loaded = detail::tensor_from_json(params_json.at(name), name);
    if (loaded.rows() != tensor.rows() || loaded.cols() != tensor.cols())
      throw DataError("checkpoint: tensor '" + name + "' has shape " +
                      std::to_string(loaded.rows()) + "x" +
                      std::to_string(loaded.cols()) + ", expected " +
                      std::to_string(tensor.rows()) + "x" +
                      std::to_string(tensor.cols()));
    tensor.mutable_values() = loaded.values();
    for (double v : tensor.values())
      if (!std::isfinite(v))
        throw DataError("checkpoint: tensor '" + name +
                        "' holds a non-finite value");
  }
  return ckpt;
}

inline void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  write_file(path, serialize_checkpoint(ckpt));
}

inline Checkpoint load_checkpoint(const std::string& path) {
  return parse_checkpoint(read_file(path));
}

}  // namespace cfgsim
