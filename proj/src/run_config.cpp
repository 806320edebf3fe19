#include "hoover/run_config.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "hoover/error.hpp"

namespace hoover {

using nlohmann::json;

namespace {

const char* mode_name(RunMode mode) { return mode == RunMode::kVerify ? "verify" : "synthesize"; }

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  require(it != j.end(), ErrorCode::kConfig, std::string("missing key '") + key + "'");
  return *it;
}

std::uint64_t as_uint(const json& v, const char* key) {
  require(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0),
          ErrorCode::kConfig, std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

double as_double(const json& v, const char* key) {
  require(v.is_number(), ErrorCode::kConfig, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::string as_string(const json& v, const char* key) {
  require(v.is_string(), ErrorCode::kConfig, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Point as_point(const json& v, const char* key) {
  require(v.is_array(), ErrorCode::kConfig, std::string("'") + key + "' must be an array");
  Point p;
  for (const auto& x : v) p.push_back(as_double(x, key));
  return p;
}

}  // namespace

MetaConfig RunConfig::meta(unsigned threads) const {
  return MetaConfig{
      .total_budget = budget,
      .instances = instances,
      .nu_max = nu_max,
      .rho_max = rho_max,
      .sigma = sigma,
      .batch_size = batch_size,
      .eval_samples = eval_samples,
      .seed = seed,
      .threads = threads,
      .collect_traces = !trace.empty(),
  };
}

json to_json(const RunConfig& cfg) {
  json params = json::object();
  for (const auto& [k, v] : cfg.model_params) params[k] = v;
  return {
      {"mode", mode_name(cfg.mode)},
      {"model", cfg.model},
      {"model_params", params},
      {"budget", cfg.budget},
      {"batch_size", cfg.batch_size},
      {"sigma", cfg.sigma},
      {"nu_max", cfg.nu_max},
      {"rho_max", cfg.rho_max},
      {"instances", cfg.instances},
      {"eval_samples", cfg.eval_samples},
      {"seed", cfg.seed},
      {"time_bound", cfg.time_bound ? json(*cfg.time_bound) : json(nullptr)},
      {"output", cfg.output},
      {"trace", cfg.trace},
  };
}

RunConfig run_config_from_json(const json& j) {
  require(j.is_object(), ErrorCode::kConfig, "run config must be a JSON object");
  static const std::set<std::string> known = {
      "mode", "model", "model_params", "budget", "batch_size", "sigma", "nu_max", "rho_max",
      "instances", "eval_samples", "seed", "time_bound", "output", "trace"};
  for (const auto& [key, value] : j.items()) {
    require(known.contains(key), ErrorCode::kConfig, "unknown config key '" + key + "'");
  }
  RunConfig cfg;
  const std::string mode = as_string(field(j, "mode"), "mode");
  require(mode == "verify" || mode == "synthesize", ErrorCode::kConfig,
          "mode must be 'verify' or 'synthesize'");
  cfg.mode = mode == "verify" ? RunMode::kVerify : RunMode::kSynthesize;
  cfg.model = as_string(field(j, "model"), "model");
  cfg.budget = as_uint(field(j, "budget"), "budget");
  if (j.contains("model_params")) {
    const json& p = j["model_params"];
    require(p.is_object(), ErrorCode::kConfig, "'model_params' must be an object");
    for (const auto& [k, v] : p.items()) cfg.model_params[k] = as_double(v, "model_params");
  }
  if (j.contains("batch_size")) cfg.batch_size = as_uint(j["batch_size"], "batch_size");
  if (j.contains("sigma")) cfg.sigma = as_double(j["sigma"], "sigma");
  if (j.contains("nu_max")) cfg.nu_max = as_double(j["nu_max"], "nu_max");
  if (j.contains("rho_max")) cfg.rho_max = as_double(j["rho_max"], "rho_max");
  if (j.contains("instances")) cfg.instances = as_uint(j["instances"], "instances");
  if (j.contains("eval_samples")) cfg.eval_samples = as_uint(j["eval_samples"], "eval_samples");
  if (j.contains("seed")) cfg.seed = as_uint(j["seed"], "seed");
  if (j.contains("time_bound") && !j["time_bound"].is_null()) {
    const auto k = as_uint(j["time_bound"], "time_bound");
    require(k >= 1 && k < 1000000, ErrorCode::kConfig, "'time_bound' must lie in [1, 1e6)");
    cfg.time_bound = static_cast<int>(k);
  }
  if (j.contains("output")) cfg.output = as_string(j["output"], "output");
  if (j.contains("trace")) cfg.trace = as_string(j["trace"], "trace");
  return cfg;
}

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("malformed config: ") + e.what());
  }
  return run_config_from_json(j);
}

bool operator==(const RunResult& a, const RunResult& b) {
  return a.config == b.config && a.candidates == b.candidates && a.best_instance == b.best_instance &&
         a.best_point == b.best_point && a.best_estimate == b.best_estimate &&
         a.queries_used == b.queries_used && a.optimizer_queries == b.optimizer_queries &&
         a.eval_queries == b.eval_queries && a.unspent_budget == b.unspent_budget &&
         a.clamped_observations == b.clamped_observations && a.wall_time_s == b.wall_time_s;
}

json to_json(const RunResult& r) {
  json candidates = json::array();
  for (const InstanceSummary& c : r.candidates) {
    candidates.push_back({
        {"instance", c.instance},
        {"rho", c.rho},
        {"point", c.point},
        {"estimate", c.estimate},
        {"std_error", c.std_error},
        {"tree", {{"nodes", c.nodes}, {"max_depth", c.max_depth}, {"batches", c.batches}}},
        {"queries_used", c.queries_used},
    });
  }
  return {
      {"config", r.config},
      {"candidates", candidates},
      {"best_instance", r.best_instance},
      {"best_point", r.best_point},
      {"best_estimate", r.best_estimate},
      {"queries_used", r.queries_used},
      {"optimizer_queries", r.optimizer_queries},
      {"eval_queries", r.eval_queries},
      {"unspent_budget", r.unspent_budget},
      {"clamped_observations", r.clamped_observations},
      {"wall_time_s", r.wall_time_s},
  };
}

RunResult run_result_from_json(const json& j) {
  require(j.is_object(), ErrorCode::kParse, "run result must be a JSON object");
  RunResult r;
  r.config = field(j, "config");
  for (const json& c : field(j, "candidates")) {
    const json& tree = field(c, "tree");
    r.candidates.push_back(InstanceSummary{
        .instance = as_uint(field(c, "instance"), "instance"),
        .rho = as_double(field(c, "rho"), "rho"),
        .point = as_point(field(c, "point"), "point"),
        .estimate = as_double(field(c, "estimate"), "estimate"),
        .std_error = as_double(field(c, "std_error"), "std_error"),
        .nodes = as_uint(field(tree, "nodes"), "nodes"),
        .max_depth = static_cast<int>(as_uint(field(tree, "max_depth"), "max_depth")),
        .batches = as_uint(field(tree, "batches"), "batches"),
        .queries_used = as_uint(field(c, "queries_used"), "queries_used"),
    });
  }
  r.best_instance = as_uint(field(j, "best_instance"), "best_instance");
  r.best_point = as_point(field(j, "best_point"), "best_point");
  r.best_estimate = as_double(field(j, "best_estimate"), "best_estimate");
  r.queries_used = as_uint(field(j, "queries_used"), "queries_used");
  r.optimizer_queries = as_uint(field(j, "optimizer_queries"), "optimizer_queries");
  r.eval_queries = as_uint(field(j, "eval_queries"), "eval_queries");
  r.unspent_budget = as_uint(field(j, "unspent_budget"), "unspent_budget");
  r.clamped_observations = as_uint(field(j, "clamped_observations"), "clamped_observations");
  r.wall_time_s = as_double(field(j, "wall_time_s"), "wall_time_s");
  return r;
}

std::string traces_to_jsonl(const RunResult& result) {
  std::ostringstream out;
  for (std::size_t i = 0; i < result.traces.size(); ++i) {
    for (const TraceRecord& t : result.traces[i]) {
      const json line = {
          {"instance", i},
          {"m", t.batch},
          {"h", t.label.depth},
          {"i", t.label.index},
          {"point", t.point},
          {"batch_mean", t.batch_mean},
          {"max_depth", t.max_depth},
      };
      out << line.dump() << '\n';
    }
  }
  return out.str();
}

RunResult execute_run(const RunConfig& cfg, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const NmcModel model = make_model(cfg.model_request());
  const ModelMode expected = cfg.mode == RunMode::kVerify ? ModelMode::kVerification : ModelMode::kSynthesis;
  require(model.mode == expected, ErrorCode::kConfig,
          "model '" + cfg.model + "' is a " + to_string(model.mode) + " model; use " +
              (model.mode == ModelMode::kVerification ? "verify" : "synthesize"));
  const MetaConfig meta = cfg.meta(threads);
  const MetaOutcome outcome = run_meta(ModelObjective(model), model.search_space, meta);

  RunResult r;
  r.config = to_json(cfg);
  for (const Candidate& c : outcome.candidates) {
    r.candidates.push_back(InstanceSummary{
        .instance = c.instance,
        .rho = c.rho,
        .point = c.point,
        .estimate = c.estimate,
        .std_error = c.std_error,
        .nodes = c.run.tree.nodes,
        .max_depth = c.run.tree.max_depth,
        .batches = c.run.tree.batches,
        .queries_used = c.run.queries_used,
    });
  }
  r.best_instance = outcome.best_instance;
  r.best_point = outcome.best_point;
  r.best_estimate = outcome.best_estimate;
  r.queries_used = outcome.total_queries;
  r.optimizer_queries = outcome.optimizer_queries;
  r.eval_queries = outcome.eval_queries;
  r.unspent_budget = outcome.unspent_budget;
  r.clamped_observations = outcome.clamped;
  r.traces = outcome.traces;
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace hoover
