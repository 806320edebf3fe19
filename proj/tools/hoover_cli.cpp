// hoover: command-line front end over the C API.
//
//   hoover verify     --model sharp --budget 20000 --output result.json
//   hoover synthesize --model lqr --budget 32000 --batch-size 10
//   hoover sweep      --model sharp --budgets 2000,8000,32000 --repeats 10
//   hoover eval       --model sharp --point 0.5,0.5 --samples 100000

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hoover/hoover.h"

namespace {

enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitUnknownModel = 2,
  kExitConfig = 3,
  kExitParse = 4,
  kExitDomain = 5,
  kExitIo = 6,
  kExitSimulation = 7,
  kExitNumerical = 8,
};

int exit_code_for(hoover_status status) {
  switch (status) {
    case HOOVER_OK: return kExitOk;
    case HOOVER_ERROR_UNKNOWN_MODEL: return kExitUnknownModel;
    case HOOVER_ERROR_CONFIG:
    case HOOVER_ERROR_DIMENSION_GUARD: return kExitConfig;
    case HOOVER_ERROR_PARSE: return kExitParse;
    case HOOVER_ERROR_OUT_OF_DOMAIN: return kExitDomain;
    case HOOVER_ERROR_IO: return kExitIo;
    case HOOVER_ERROR_SIMULATION: return kExitSimulation;
    case HOOVER_ERROR_NUMERICAL: return kExitNumerical;
    default: return kExitUnexpected;
  }
}

struct CliError {
  int code;
  std::string message;
};

void check(hoover_status status) {
  if (status != HOOVER_OK) {
    throw CliError{exit_code_for(status),
                   std::string(hoover_status_name(status)) + ": " + hoover_last_error()};
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw CliError{kExitParse, "cannot parse " + what + " '" + s + "'"};
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  throw CliError{kExitParse, "cannot parse " + what + " '" + s + "'"};
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& what, T (*parse)(const std::string&, const std::string&)) {
  std::vector<T> out;
  for (const auto& item : split(text, ',')) out.push_back(parse(item, what));
  if (out.empty()) throw CliError{kExitParse, "empty " + what + " list"};
  return out;
}

unsigned thread_cap() {
  const char* env = std::getenv("HOOVER_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  return static_cast<unsigned>(parse_uint(env, "HOOVER_THREADS"));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitIo, "cannot read config file " + path};
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{kExitIo, "cannot write output file " + path};
  return out;
}

// Fetches text from a buffer-style C API call.
template <typename Handle, typename Fn>
std::string fetch_text(const Handle* handle, Fn fn) {
  std::size_t required = 0;
  check(fn(handle, nullptr, 0, &required));
  std::string text(required, '\0');
  check(fn(handle, text.data(), text.size(), &required));
  text.resize(required - 1);
  return text;
}

template <typename T, void (*Destroy)(T*)>
struct Owned {
  T* ptr = nullptr;
  ~Owned() { Destroy(ptr); }
};

// Flags shared by verify, synthesize and sweep.
struct RunFlags {
  std::string config_path;
  std::string model;
  std::vector<std::string> params;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> batch_size;
  std::optional<double> rho_max;
  std::optional<double> nu_max;
  std::optional<double> sigma;
  std::optional<std::uint64_t> instances;
  std::optional<std::uint64_t> eval_samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> time_bound;
  std::string output;
  std::string trace;

  void attach(CLI::App& app, bool with_budget) {
    app.add_option("--config", config_path, "Run configuration file (JSON)");
    app.add_option("--model", model, "Benchmark name: random-motion, sharp, sl-platoon, lqr");
    app.add_option("--param", params, "Model parameter key=value (repeatable), e.g. s=0.1");
    if (with_budget) app.add_option("--budget", budget, "Total simulator-call budget N");
    app.add_option("--batch-size", batch_size, "Observations per chosen cell (default 100)");
    app.add_option("--rho-max", rho_max, "Largest smoothness rho (default 0.6)");
    app.add_option("--nu-max", nu_max, "Smoothness nu (default 1.0)");
    app.add_option("--sigma", sigma, "Sub-Gaussian noise scale (default 0.5)");
    app.add_option("--instances", instances, "Parallel HOO-MB instances K (default 4)");
    app.add_option("--eval-samples", eval_samples, "Monte-Carlo samples per candidate (default 500)");
    app.add_option("--seed", seed, "Master seed (default 0)");
    app.add_option("--time-bound", time_bound, "Time bound k (model default when omitted)");
    app.add_option("--output", output, "Output file");
  }

  bool any_run_flag() const {
    return !model.empty() || !params.empty() || budget || batch_size || rho_max || nu_max || sigma ||
           instances || eval_samples || seed || time_bound;
  }

  nlohmann::json params_json() const {
    nlohmann::json p = nlohmann::json::object();
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw CliError{kExitParse, "--param expects key=value, got '" + kv + "'"};
      std::string key = kv.substr(0, eq);
      const std::string prefix = model + ".";
      if (key.rfind(prefix, 0) == 0) key = key.substr(prefix.size());
      p[key] = parse_double(kv.substr(eq + 1), "parameter " + key);
    }
    return p;
  }

  // Config document for the library; flags map one to one onto its keys.
  nlohmann::json config(const std::string& mode) const {
    if (!config_path.empty()) {
      if (any_run_flag()) throw CliError{kExitConfig, "--config cannot be combined with other run flags"};
      const std::string text = read_file(config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw CliError{kExitParse, std::string("malformed config file: ") + e.what()};
      }
      if (!j.is_object()) throw CliError{kExitParse, "config file must hold a JSON object"};
      if (j.contains("mode") && j["mode"] != mode && mode != "sweep") {
        throw CliError{kExitConfig, "config mode '" + j["mode"].dump() + "' does not match command " + mode};
      }
      if (!output.empty()) j["output"] = output;
      if (!trace.empty()) j["trace"] = trace;
      return j;
    }
    if (model.empty()) throw CliError{kExitConfig, "--model is required"};
    nlohmann::json j = {{"mode", mode == "sweep" ? "verify" : mode}, {"model", model}, {"model_params", params_json()}};
    j["budget"] = budget.value_or(0);
    if (batch_size) j["batch_size"] = *batch_size;
    if (rho_max) j["rho_max"] = *rho_max;
    if (nu_max) j["nu_max"] = *nu_max;
    if (sigma) j["sigma"] = *sigma;
    if (instances) j["instances"] = *instances;
    if (eval_samples) j["eval_samples"] = *eval_samples;
    if (seed) j["seed"] = *seed;
    if (time_bound) j["time_bound"] = *time_bound;
    if (!output.empty()) j["output"] = output;
    if (!trace.empty()) j["trace"] = trace;
    return j;
  }
};

int cmd_run(const RunFlags& flags, const std::string& mode) {
  nlohmann::json cfg = flags.config(mode);
  if (!flags.config_path.empty() && !cfg.contains("mode")) cfg["mode"] = mode;
  const std::string output = cfg.value("output", std::string());
  const std::string trace = cfg.value("trace", std::string());
  std::optional<std::ofstream> out;
  if (!output.empty()) out.emplace(open_output(output));
  std::optional<std::ofstream> trace_out;
  if (!trace.empty()) trace_out.emplace(open_output(trace));

  Owned<hoover_result, hoover_result_destroy> result;
  check(hoover_run(cfg.dump().c_str(), thread_cap(), &result.ptr));

  std::size_t dim = 0;
  double estimate = 0.0;
  check(hoover_result_best(result.ptr, nullptr, 0, &dim, &estimate));
  std::vector<double> point(dim);
  check(hoover_result_best(result.ptr, point.data(), point.size(), &dim, &estimate));

  if (out) {
    *out << fetch_text(result.ptr, hoover_result_json);
    if (!out->flush()) throw CliError{kExitIo, "failed writing " + output};
  }
  if (trace_out) {
    *trace_out << fetch_text(result.ptr, hoover_result_trace_jsonl);
    if (!trace_out->flush()) throw CliError{kExitIo, "failed writing " + trace};
  }

  std::cout.precision(17);
  std::cout << "best_point";
  for (const double x : point) std::cout << ' ' << x;
  std::cout << "\nbest_estimate " << estimate << '\n';
  return kExitOk;
}

int cmd_sweep(const RunFlags& flags, const std::string& budgets_text, std::uint64_t repeats) {
  const auto budgets = parse_list<std::uint64_t>(budgets_text, "budget", parse_uint);
  nlohmann::json cfg = flags.config("sweep");
  if (!cfg.contains("budget") || cfg["budget"] == 0) cfg["budget"] = budgets.front();
  const std::string output = cfg.value("output", std::string());
  std::optional<std::ofstream> out;
  if (!output.empty()) out.emplace(open_output(output));

  Owned<hoover_sweep, hoover_sweep_destroy> sweep;
  check(hoover_sweep_run(cfg.dump().c_str(), budgets.data(), budgets.size(), repeats, thread_cap(), &sweep.ptr));
  const std::string table = fetch_text(sweep.ptr, hoover_sweep_table);
  if (out) {
    *out << table;
    if (!out->flush()) throw CliError{kExitIo, "failed writing " + output};
  } else {
    std::cout << table;
  }
  return kExitOk;
}

int cmd_eval(const std::string& model, const std::vector<std::string>& params, const std::string& point_text,
             std::uint64_t samples, std::uint64_t seed, std::optional<std::uint64_t> time_bound) {
  RunFlags shim;
  shim.model = model;
  shim.params = params;
  const auto point = parse_list<double>(point_text, "point coordinate", parse_double);
  Owned<hoover_model, hoover_model_destroy> handle;
  check(hoover_model_create(model.c_str(), shim.params_json().dump().c_str(),
                            time_bound ? static_cast<int>(*time_bound) : 0, &handle.ptr));
  hoover_estimate est{};
  check(hoover_estimate_point(handle.ptr, point.data(), point.size(), samples, seed, &est));
  std::cout.precision(17);
  std::cout << est.mean << " +- " << est.std_error << " (" << est.samples << " samples)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hoover: bandit-based verification and parameter synthesis for Markov chains"};
  app.require_subcommand(1);

  RunFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "Maximize the hitting probability over the initial set");
  verify_flags.attach(*verify, true);
  verify->add_option("--trace", verify_flags.trace, "Per-batch trace file (JSON lines)");

  RunFlags synth_flags;
  auto* synth = app.add_subcommand("synthesize", "Maximize expected reward over the parameter set");
  synth_flags.attach(*synth, true);
  synth->add_option("--trace", synth_flags.trace, "Per-batch trace file (JSON lines)");

  RunFlags sweep_flags;
  std::string budgets;
  std::uint64_t repeats = 1;
  auto* sweep = app.add_subcommand("sweep", "Run the optimizer over a list of budgets and seeds");
  sweep_flags.attach(*sweep, false);
  sweep->add_option("--budgets", budgets, "Comma-separated budgets, strictly increasing")->required();
  sweep->add_option("--repeats", repeats, "Seeds per budget");

  std::string eval_model;
  std::vector<std::string> eval_params;
  std::string eval_point;
  std::uint64_t eval_samples = 10000;
  std::uint64_t eval_seed = 0;
  std::optional<std::uint64_t> eval_time_bound;
  auto* eval = app.add_subcommand("eval", "Monte-Carlo estimate at one point");
  eval->add_option("--model", eval_model, "Benchmark name")->required();
  eval->add_option("--param", eval_params, "Model parameter key=value (repeatable)");
  eval->add_option("--point", eval_point, "Comma-separated coordinates")->required();
  eval->add_option("--samples", eval_samples, "Number of observations");
  eval->add_option("--seed", eval_seed, "Seed");
  eval->add_option("--time-bound", eval_time_bound, "Time bound k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (verify->parsed()) return cmd_run(verify_flags, "verify");
    if (synth->parsed()) return cmd_run(synth_flags, "synthesize");
    if (sweep->parsed()) return cmd_sweep(sweep_flags, budgets, repeats);
    if (eval->parsed()) return cmd_eval(eval_model, eval_params, eval_point, eval_samples, eval_seed, eval_time_bound);
  } catch (const CliError& e) {
    std::cerr << "hoover: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "hoover: " << e.what() << '\n';
    return kExitUnexpected;
  }
  return kExitUnexpected;
}
