#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "hoover/hoover.h"

namespace {

const char* kConfig =
    R"({"mode": "verify", "model": "sharp", "budget": 2000, "batch_size": 25,
        "eval_samples": 100, "seed": 3, "trace": "t.jsonl"})";

std::string result_text(const hoover_result* r,
                        hoover_status (*fn)(const hoover_result*, char*, size_t, size_t*)) {
  size_t need = 0;
  REQUIRE(fn(r, nullptr, 0, &need) == HOOVER_OK);
  std::string text(need, '\0');
  REQUIRE(fn(r, text.data(), text.size(), &need) == HOOVER_OK);
  text.resize(need - 1);
  return text;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strcmp(hoover_version(), "1.0.0") == 0);
  CHECK(std::strcmp(hoover_status_name(HOOVER_ERROR_UNKNOWN_MODEL), "unknown model") == 0);
}

TEST_CASE("model handles") {
  hoover_model* m = nullptr;
  REQUIRE(hoover_model_create("sl-platoon", R"({"num_cars": 4})", 0, &m) == HOOVER_OK);
  size_t dim = 0;
  CHECK(hoover_model_dimension(m, &dim) == HOOVER_OK);
  CHECK(dim == 3);
  std::vector<double> lo(3), hi(3);
  CHECK(hoover_model_bounds(m, lo.data(), hi.data(), 3) == HOOVER_OK);
  CHECK(lo[0] == -2.0);
  CHECK(hi[2] == 2.0);
  CHECK(hoover_model_bounds(m, lo.data(), hi.data(), 2) == HOOVER_ERROR_BUFFER_TOO_SMALL);
  int synth = -1;
  CHECK(hoover_model_is_synthesis(m, &synth) == HOOVER_OK);
  CHECK(synth == 0);
  hoover_model_destroy(m);

  CHECK(hoover_model_create("nope", nullptr, 0, &m) == HOOVER_ERROR_UNKNOWN_MODEL);
  CHECK(m == nullptr);
  CHECK(std::string(hoover_last_error()).find("nope") != std::string::npos);
  CHECK(hoover_model_create("sharp", "{\"s\": ", 0, &m) == HOOVER_ERROR_PARSE);
  CHECK(hoover_model_create("sharp", R"({"q": 1})", 0, &m) == HOOVER_ERROR_CONFIG);
  CHECK(hoover_model_create(nullptr, nullptr, 0, &m) == HOOVER_ERROR_INVALID_ARGUMENT);
  hoover_model_destroy(nullptr);
}

TEST_CASE("point estimates") {
  hoover_model* m = nullptr;
  REQUIRE(hoover_model_create("sharp", nullptr, 0, &m) == HOOVER_OK);
  const double centre[2] = {0.5, 0.5};
  hoover_estimate est{};
  REQUIRE(hoover_estimate_point(m, centre, 2, 20000, 1, &est) == HOOVER_OK);
  CHECK(est.samples == 20000);
  CHECK(std::abs(est.mean - 0.3) < 0.02);
  const double outside[2] = {1.5, 0.5};
  CHECK(hoover_estimate_point(m, outside, 2, 10, 1, &est) == HOOVER_ERROR_OUT_OF_DOMAIN);
  hoover_model_destroy(m);
}

TEST_CASE("runs: best point, JSON and traces") {
  hoover_result* r = nullptr;
  REQUIRE(hoover_run(kConfig, 1, &r) == HOOVER_OK);
  size_t dim = 0;
  double estimate = 0.0;
  CHECK(hoover_result_best(r, nullptr, 0, &dim, &estimate) == HOOVER_OK);
  CHECK(dim == 2);
  std::vector<double> point(dim);
  CHECK(hoover_result_best(r, point.data(), 1, &dim, &estimate) == HOOVER_ERROR_BUFFER_TOO_SMALL);
  CHECK(hoover_result_best(r, point.data(), 2, &dim, &estimate) == HOOVER_OK);

  const std::string json = result_text(r, hoover_result_json);
  CHECK(json.find("\"best_point\"") != std::string::npos);
  const std::string trace = result_text(r, hoover_result_trace_jsonl);
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 4 * 20);

  char tiny[4];
  size_t need = 0;
  CHECK(hoover_result_json(r, tiny, sizeof tiny, &need) == HOOVER_ERROR_BUFFER_TOO_SMALL);
  CHECK(need == json.size() + 1);
  hoover_result_destroy(r);

  CHECK(hoover_run("{", 1, &r) == HOOVER_ERROR_PARSE);
  CHECK(hoover_run(R"({"mode": "synthesize", "model": "sharp", "budget": 1000})", 1, &r) == HOOVER_ERROR_CONFIG);
  CHECK(hoover_run(R"({"mode": "verify", "model": "sharp", "budget": 10})", 1, &r) == HOOVER_ERROR_CONFIG);
  CHECK(r == nullptr);
}

TEST_CASE("runs are reproducible across thread counts") {
  hoover_result* a = nullptr;
  hoover_result* b = nullptr;
  REQUIRE(hoover_run(kConfig, 1, &a) == HOOVER_OK);
  REQUIRE(hoover_run(kConfig, 4, &b) == HOOVER_OK);
  CHECK(result_text(a, hoover_result_trace_jsonl) == result_text(b, hoover_result_trace_jsonl));
  std::vector<double> pa(2), pb(2);
  size_t dim = 0;
  double ea = 0, eb = 0;
  hoover_result_best(a, pa.data(), 2, &dim, &ea);
  hoover_result_best(b, pb.data(), 2, &dim, &eb);
  CHECK(pa == pb);
  CHECK(ea == eb);
  hoover_result_destroy(a);
  hoover_result_destroy(b);
}

TEST_CASE("sweeps") {
  const uint64_t budgets[] = {800, 1600};
  hoover_sweep* s = nullptr;
  REQUIRE(hoover_sweep_run(R"({"mode": "verify", "model": "sharp", "budget": 800, "batch_size": 20,
                               "eval_samples": 50, "instances": 2})",
                           budgets, 2, 2, 1, &s) == HOOVER_OK);
  size_t need = 0;
  REQUIRE(hoover_sweep_table(s, nullptr, 0, &need) == HOOVER_OK);
  std::string table(need, '\0');
  REQUIRE(hoover_sweep_table(s, table.data(), need, &need) == HOOVER_OK);
  CHECK(table.rfind("budget,median", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
  hoover_sweep_destroy(s);
}
