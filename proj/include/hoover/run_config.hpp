#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hoover/meta.hpp"
#include "hoover/model_registry.hpp"

namespace hoover {

enum class RunMode { kVerify, kSynthesize };

/// Everything needed to reproduce one run. Mirrors the CLI flags one to one.
struct RunConfig {
  RunMode mode = RunMode::kVerify;
  std::string model;
  ParamBlock model_params;
  std::uint64_t budget = 0;
  std::size_t batch_size = 100;
  double sigma = 0.5;
  double nu_max = 1.0;
  double rho_max = 0.6;
  std::size_t instances = 4;
  std::size_t eval_samples = 500;
  std::uint64_t seed = 0;
  std::optional<int> time_bound;
  std::string output;
  std::string trace;

  MetaConfig meta(unsigned threads = 0) const;
  ModelRequest model_request() const { return {model, model_params, time_bound}; }
};

nlohmann::json to_json(const RunConfig& cfg);
/// Strict: unknown keys and wrong types raise kConfig.
RunConfig run_config_from_json(const nlohmann::json& j);
/// Parses text; malformed JSON raises kParse.
RunConfig parse_run_config(const std::string& text);

struct InstanceSummary {
  std::size_t instance = 0;
  double rho = 0.0;
  Point point;
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t nodes = 0;
  int max_depth = 0;
  std::uint64_t batches = 0;
  std::uint64_t queries_used = 0;

  friend bool operator==(const InstanceSummary&, const InstanceSummary&) = default;
};

struct RunResult {
  nlohmann::json config;
  std::vector<InstanceSummary> candidates;
  std::size_t best_instance = 0;
  Point best_point;
  double best_estimate = 0.0;
  std::uint64_t queries_used = 0;
  std::uint64_t optimizer_queries = 0;
  std::uint64_t eval_queries = 0;
  std::uint64_t unspent_budget = 0;
  std::uint64_t clamped_observations = 0;
  double wall_time_s = 0.0;
  std::vector<std::vector<TraceRecord>> traces;  // not serialized with the result

  friend bool operator==(const RunResult& a, const RunResult& b);
};

nlohmann::json to_json(const RunResult& result);
RunResult run_result_from_json(const nlohmann::json& j);

/// One JSON object per trace record, tagged with the instance index.
std::string traces_to_jsonl(const RunResult& result);

/// Builds the model, checks the mode, runs the meta-optimizer and times it.
RunResult execute_run(const RunConfig& cfg, unsigned threads = 0);

}  // namespace hoover
