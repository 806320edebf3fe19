#include <doctest.h>

#include <cmath>

#include "hoover/error.hpp"
#include "hoover/mc_eval.hpp"
#include "hoover/meta.hpp"

using namespace hoover;

namespace {

FunctionObjective bump() {
  return FunctionObjective(2, {0.0, 1.0}, [](std::span<const double> x, Rng& rng) {
    const double p = 0.3 * std::exp(-((x[0] - 0.5) * (x[0] - 0.5) + (x[1] - 0.5) * (x[1] - 0.5)) / 0.1);
    return rng.bernoulli(p) ? 1.0 : 0.0;
  });
}

MetaConfig small_config() {
  MetaConfig cfg;
  cfg.total_budget = 4003;
  cfg.instances = 4;
  cfg.batch_size = 50;
  cfg.eval_samples = 200;
  cfg.seed = 9;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("rho schedule") {
  const auto rhos = rho_schedule(0.9, 4);
  REQUIRE(rhos.size() == 4);
  CHECK(rhos[0] == doctest::Approx(0.9));
  CHECK(rhos[1] == doctest::Approx(std::pow(0.9, 4.0 / 3.0)));
  CHECK(rhos[1] == doctest::Approx(0.8689).epsilon(1e-4));
  CHECK(rhos[2] == doctest::Approx(0.81));
  CHECK(rhos[3] == doctest::Approx(0.6561));
  for (std::size_t i = 1; i < rhos.size(); ++i) CHECK(rhos[i] < rhos[i - 1]);
  CHECK(rho_schedule(0.6, 1) == std::vector<double>{0.6});
  CHECK_THROWS_AS(rho_schedule(1.0, 4), Error);
}

TEST_CASE("budget accounting") {
  const auto cfg = small_config();
  const auto out = run_meta(bump(), Region({0, 0}, {1, 1}), cfg);
  CHECK(cfg.instance_budget() == 1000);
  CHECK(out.unspent_budget == 3);
  std::uint64_t sum = 0;
  for (const auto& c : out.candidates) {
    CHECK(c.run.queries_used == 50 * batch_count_for(1000, 50));
    sum += c.run.queries_used;
  }
  CHECK(out.optimizer_queries == sum);
  CHECK(out.eval_queries == 4 * 200);
  CHECK(out.total_queries == sum + 800);
}

TEST_CASE("the winner is the best-scoring candidate, lower index on ties") {
  const auto out = run_meta(bump(), Region({0, 0}, {1, 1}), small_config());
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    if (i < out.best_instance) CHECK(out.candidates[i].estimate < out.best_estimate);
    if (i > out.best_instance) CHECK(out.candidates[i].estimate <= out.best_estimate);
  }
  CHECK(out.best_point == out.candidates[out.best_instance].point);

  // A constant objective ties everywhere.
  const FunctionObjective flat(2, {0.0, 1.0}, [](std::span<const double>, Rng&) { return 0.5; });
  CHECK(run_meta(flat, Region({0, 0}, {1, 1}), small_config()).best_instance == 0);
}

TEST_CASE("candidate scores use the evaluation stream") {
  const auto cfg = small_config();
  const auto out = run_meta(bump(), Region({0, 0}, {1, 1}), cfg);
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    const auto est = mc_estimate(bump(), out.candidates[i].point, cfg.eval_samples,
                                 derive_seed(cfg.seed, StreamTag::kEvaluation, i));
    CHECK(out.candidates[i].estimate == est.mean);
  }
}

TEST_CASE("execution order and thread count do not change the outcome") {
  const auto dom = Region({0, 0}, {1, 1});
  auto cfg = small_config();
  const auto base = run_meta(bump(), dom, cfg);
  for (const auto& order : std::vector<std::vector<std::size_t>>{{3, 2, 1, 0}, {1, 3, 0, 2}}) {
    const auto permuted = run_meta_in_order(bump(), dom, cfg, order);
    CHECK(permuted.best_instance == base.best_instance);
    CHECK(permuted.best_point == base.best_point);
    CHECK(permuted.best_estimate == base.best_estimate);
    for (std::size_t i = 0; i < 4; ++i) CHECK(permuted.candidates[i].point == base.candidates[i].point);
  }
  cfg.threads = 4;
  const auto threaded = run_meta(bump(), dom, cfg);
  CHECK(threaded.best_point == base.best_point);
  CHECK(threaded.best_estimate == base.best_estimate);
  CHECK_THROWS_AS(run_meta_in_order(bump(), dom, cfg, {0, 0, 1, 2}), Error);
}

TEST_CASE("traces are collected per instance") {
  auto cfg = small_config();
  cfg.collect_traces = true;
  const auto out = run_meta(bump(), Region({0, 0}, {1, 1}), cfg);
  REQUIRE(out.traces.size() == 4);
  for (const auto& t : out.traces) CHECK(t.size() == batch_count_for(1000, 50));
}

TEST_CASE("invalid meta configurations") {
  auto cfg = small_config();
  cfg.instances = 0;
  CHECK_THROWS_AS(run_meta(bump(), Region({0, 0}, {1, 1}), cfg), Error);
  cfg = small_config();
  cfg.total_budget = 100;
  CHECK_THROWS_AS(run_meta(bump(), Region({0, 0}, {1, 1}), cfg), Error);
}

TEST_CASE("errors inside an instance name the instance") {
  const FunctionObjective faulty(1, {0.0, 1.0}, [](std::span<const double>, Rng&) -> double {
    fail(ErrorCode::kSimulationFault, "boom");
  });
  auto cfg = small_config();
  cfg.threads = 3;
  try {
    run_meta(faulty, Region({0}, {1}), cfg);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSimulationFault);
    CHECK(std::string(e.what()).find("instance 0") != std::string::npos);
  }
}
