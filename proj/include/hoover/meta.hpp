#pragma once

#include <cstdint>
#include <vector>

#include "hoover/hoo_mb.hpp"

namespace hoover {

struct MetaConfig {
  std::uint64_t total_budget = 20000;  // N, split evenly over the instances
  std::size_t instances = 4;           // K
  double nu_max = 1.0;
  double rho_max = 0.6;
  double sigma = 0.5;
  std::size_t batch_size = 100;
  std::size_t eval_samples = 500;  // M, Monte-Carlo samples per candidate
  std::uint64_t seed = 0;
  unsigned threads = 0;  // worker cap, 0 = hardware concurrency
  bool collect_traces = false;

  void validate() const;
  std::uint64_t instance_budget() const { return total_budget / instances; }
};

struct Candidate {
  std::size_t instance = 0;
  double rho = 0.0;
  Point point;
  double estimate = 0.0;
  double std_error = 0.0;
  HooMbOutcome run;
};

struct MetaOutcome {
  std::vector<Candidate> candidates;
  std::size_t best_instance = 0;
  Point best_point;
  double best_estimate = 0.0;
  std::uint64_t optimizer_queries = 0;
  std::uint64_t eval_queries = 0;
  std::uint64_t total_queries = 0;
  std::uint64_t unspent_budget = 0;  // N mod K
  std::uint64_t clamped = 0;
  std::vector<std::vector<TraceRecord>> traces;  // per instance, when collected
};

/// rho_max^(K / (K - i + 1)) for i = 1..K; strictly decreasing.
std::vector<double> rho_schedule(double rho_max, std::size_t instances);

/// Runs K independent HOO-MB instances over the rho schedule, scores every
/// returned point with M fresh observations and keeps the best one.
MetaOutcome run_meta(const Objective& objective, const Region& domain, const MetaConfig& cfg);

/// Same as run_meta but executes instances in `order` (a permutation of
/// 0..K-1) on the calling thread.
MetaOutcome run_meta_in_order(const Objective& objective, const Region& domain,
                              const MetaConfig& cfg, const std::vector<std::size_t>& order);

/// Resolves a worker cap: 0 means hardware concurrency, never below 1.
unsigned resolve_thread_count(unsigned requested);

}  // namespace hoover
