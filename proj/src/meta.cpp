#include "hoover/meta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "hoover/error.hpp"
#include "hoover/mc_eval.hpp"
#include "parallel.hpp"

namespace hoover {

void MetaConfig::validate() const {
  require(instances >= 1, ErrorCode::kConfig, "instances must be at least 1");
  require(batch_size >= 1, ErrorCode::kConfig, "batch size must be at least 1");
  require(eval_samples >= 1, ErrorCode::kConfig, "eval samples must be at least 1");
  require(nu_max > 0.0 && std::isfinite(nu_max), ErrorCode::kConfig, "nu_max must be positive");
  require(rho_max > 0.0 && rho_max < 1.0, ErrorCode::kConfig, "rho_max must lie in (0, 1)");
  require(sigma > 0.0 && std::isfinite(sigma), ErrorCode::kConfig, "sigma must be positive");
  require(instance_budget() >= batch_size, ErrorCode::kConfig,
          "per-instance budget " + std::to_string(instance_budget()) +
              " is smaller than batch size " + std::to_string(batch_size));
}

std::vector<double> rho_schedule(double rho_max, std::size_t instances) {
  require(rho_max > 0.0 && rho_max < 1.0, ErrorCode::kConfig, "rho_max must lie in (0, 1)");
  require(instances >= 1, ErrorCode::kConfig, "instances must be at least 1");
  std::vector<double> rhos(instances);
  const auto k = static_cast<double>(instances);
  for (std::size_t i = 1; i <= instances; ++i) {
    rhos[i - 1] = std::pow(rho_max, k / (k - static_cast<double>(i) + 1.0));
  }
  return rhos;
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs instance i and scores its candidate; touches only slot i.
void run_instance(const Objective& objective, const Region& domain, const MetaConfig& cfg,
                  const std::vector<double>& rhos, std::size_t i, Candidate& slot,
                  std::vector<TraceRecord>* trace) {
  const HooMbConfig inst{
      .budget = cfg.instance_budget(),
      .batch_size = cfg.batch_size,
      .sigma = cfg.sigma,
      .nu = cfg.nu_max,
      .rho = rhos[i],
      .seed = derive_seed(cfg.seed, StreamTag::kOptimizer, i),
  };
  TraceSink sink;
  if (trace != nullptr) sink = [trace](const TraceRecord& r) { trace->push_back(r); };
  try {
    slot.run = run_hoo_mb(objective, domain, inst, sink);
    const McEstimate est = mc_estimate(objective, slot.run.best_point, cfg.eval_samples,
                                       derive_seed(cfg.seed, StreamTag::kEvaluation, i));
    slot.instance = i;
    slot.rho = rhos[i];
    slot.point = slot.run.best_point;
    slot.estimate = est.mean;
    slot.std_error = est.std_error;
    slot.run.clamped += est.clamped;
  } catch (const Error& e) {
    throw e.with_context("instance " + std::to_string(i));
  }
}

MetaOutcome reduce(const MetaConfig& cfg, std::vector<Candidate> candidates,
                   std::vector<std::vector<TraceRecord>> traces) {
  MetaOutcome out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].estimate > candidates[out.best_instance].estimate) out.best_instance = i;
    out.optimizer_queries += candidates[i].run.queries_used;
    out.clamped += candidates[i].run.clamped;
  }
  out.best_point = candidates[out.best_instance].point;
  out.best_estimate = candidates[out.best_instance].estimate;
  out.eval_queries = static_cast<std::uint64_t>(cfg.instances) * cfg.eval_samples;
  out.total_queries = out.optimizer_queries + out.eval_queries;
  out.unspent_budget = cfg.total_budget % cfg.instances;
  out.candidates = std::move(candidates);
  out.traces = std::move(traces);
  return out;
}

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

MetaOutcome run_meta(const Objective& objective, const Region& domain, const MetaConfig& cfg) {
  cfg.validate();
  const auto rhos = rho_schedule(cfg.rho_max, cfg.instances);
  std::vector<Candidate> candidates(cfg.instances);
  std::vector<std::vector<TraceRecord>> traces(cfg.collect_traces ? cfg.instances : 0);
  const auto errors =
      detail::parallel_for(cfg.instances, resolve_thread_count(cfg.threads), [&](std::size_t i) {
        run_instance(objective, domain, cfg, rhos, i, candidates[i],
                     cfg.collect_traces ? &traces[i] : nullptr);
      });
  rethrow_first(errors);
  return reduce(cfg, std::move(candidates), std::move(traces));
}

MetaOutcome run_meta_in_order(const Objective& objective, const Region& domain,
                              const MetaConfig& cfg, const std::vector<std::size_t>& order) {
  cfg.validate();
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> identity(cfg.instances);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  require(sorted == identity, ErrorCode::kConfig, "order is not a permutation of the instances");

  const auto rhos = rho_schedule(cfg.rho_max, cfg.instances);
  std::vector<Candidate> candidates(cfg.instances);
  std::vector<std::vector<TraceRecord>> traces(cfg.collect_traces ? cfg.instances : 0);
  for (const std::size_t i : order) {
    run_instance(objective, domain, cfg, rhos, i, candidates[i],
                 cfg.collect_traces ? &traces[i] : nullptr);
  }
  return reduce(cfg, std::move(candidates), std::move(traces));
}

}  // namespace hoover
