#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "hoover/benchmarks.hpp"
#include "hoover/meta.hpp"
#include "hoover/nmc_model.hpp"
#include "hoover/objective.hpp"

namespace hoover {

struct McEstimate {
  double mean = 0.0;
  std::uint64_t sample_count = 0;
  double std_error = 0.0;  // sample stddev / sqrt(n); 0 when n == 1
  std::uint64_t clamped = 0;
};

/// Mean of `samples` observations drawn from the stream keyed by `seed`.
McEstimate mc_estimate(const Objective& objective, std::span<const double> point,
                       std::size_t samples, std::uint64_t seed);

/// Model overload; rejects points outside the search space with kOutOfDomain.
McEstimate mc_estimate(const NmcModel& model, std::span<const double> point, std::size_t samples,
                       std::uint64_t seed);

struct GridOptimum {
  Point point;
  double value = 0.0;
};

inline constexpr std::size_t kGridOracleMaxDimension = 3;

/// Brute-force maximum over the cell midpoints of a uniform grid with
/// `resolution` cells per dimension. Ties keep the first point in
/// row-major order.
GridOptimum grid_oracle(const Region& domain, std::size_t resolution,
                        const std::function<double(std::span<const double>)>& value);

/// Same scan with each point scored by mc_estimate; point k of the scan uses
/// the stream derive_seed(seed, kEstimate, k).
GridOptimum grid_oracle(const NmcModel& model, std::size_t resolution, std::size_t samples,
                        std::uint64_t seed, unsigned threads = 1);

struct RiccatiSolution {
  Eigen::MatrixXd gain;               // time-0 gain, u = K x
  std::vector<Eigen::MatrixXd> gains;  // K_0 .. K_{T-1}
};

/// Finite-horizon discrete Riccati recursion with terminal cost Q.
RiccatiSolution riccati_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                             const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R, int horizon);

/// Mean rollout cost of constant gain K over `rollouts` noise sequences. The
/// same seed yields the same noise sequences for every gain (common random
/// numbers).
double lqr_mean_cost(const LqrParams& params, const Eigen::Matrix2d& gain, std::size_t rollouts,
                     std::uint64_t seed);

struct SweepSpec {
  std::vector<std::uint64_t> budgets;  // strictly increasing
  std::size_t repeats = 1;             // seeds base.seed .. base.seed + repeats - 1
  MetaConfig base;
};

struct SweepRow {
  std::uint64_t budget = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  std::size_t nodes = 0;  // per-instance tree size
  std::uint64_t queries_used = 0;  // per repeat, optimizer + evaluation
  double wall_time_s = 0.0;
  std::vector<double> estimates;  // per repeat
};

std::vector<SweepRow> budget_sweep(const Objective& objective, const Region& domain, const SweepSpec& spec);

/// Linear-interpolation quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Delimited table with header budget,median,q25,q75,nodes,queries_used,wall_time_s.
void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace hoover
