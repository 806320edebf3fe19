#include "hoover/mc_eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "hoover/error.hpp"
#include "parallel.hpp"

namespace hoover {

McEstimate mc_estimate(const Objective& objective, std::span<const double> point,
                       std::size_t samples, std::uint64_t seed) {
  require(samples >= 1, ErrorCode::kConfig, "need at least one sample");
  std::vector<double> ys(samples);
  Rng rng(seed);
  McEstimate est;
  est.clamped = objective.observe(point, rng, ys);
  est.sample_count = samples;
  const auto n = static_cast<double>(samples);
  est.mean = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  if (samples > 1) {
    double ss = 0.0;
    for (const double y : ys) ss += (y - est.mean) * (y - est.mean);
    est.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return est;
}

McEstimate mc_estimate(const NmcModel& model, std::span<const double> point, std::size_t samples,
                       std::uint64_t seed) {
  if (!model.search_space.contains(point)) {
    fail(ErrorCode::kOutOfDomain, "point is outside the search space of " + model.name);
  }
  return mc_estimate(ModelObjective(model), point, samples, seed);
}

namespace {

// Midpoint of grid cell `flat` (row-major, last dimension fastest).
Point grid_point(const Region& domain, std::size_t resolution, std::size_t flat) {
  const std::size_t dim = domain.dimension();
  Point p(dim);
  for (std::size_t d = dim; d-- > 0;) {
    const std::size_t cell = flat % resolution;
    flat /= resolution;
    p[d] = domain.lower()[d] + (static_cast<double>(cell) + 0.5) * domain.width(d) /
                                   static_cast<double>(resolution);
  }
  return p;
}

std::size_t grid_size(const Region& domain, std::size_t resolution) {
  require(resolution >= 1, ErrorCode::kConfig, "grid resolution must be at least 1");
  require(domain.dimension() <= kGridOracleMaxDimension, ErrorCode::kDimensionGuard,
          "grid oracle supports at most " + std::to_string(kGridOracleMaxDimension) +
              " dimensions, got " + std::to_string(domain.dimension()));
  std::size_t total = 1;
  for (std::size_t d = 0; d < domain.dimension(); ++d) total *= resolution;
  return total;
}

GridOptimum argmax(const Region& domain, std::size_t resolution, const std::vector<double>& values) {
  const auto best = static_cast<std::size_t>(
      std::distance(values.begin(), std::max_element(values.begin(), values.end())));
  return {grid_point(domain, resolution, best), values[best]};
}

}  // namespace

GridOptimum grid_oracle(const Region& domain, std::size_t resolution,
                        const std::function<double(std::span<const double>)>& value) {
  const std::size_t total = grid_size(domain, resolution);
  std::vector<double> values(total);
  for (std::size_t k = 0; k < total; ++k) values[k] = value(grid_point(domain, resolution, k));
  return argmax(domain, resolution, values);
}

GridOptimum grid_oracle(const NmcModel& model, std::size_t resolution, std::size_t samples,
                        std::uint64_t seed, unsigned threads) {
  const Region& domain = model.search_space;
  const std::size_t total = grid_size(domain, resolution);
  const ModelObjective objective(model);
  std::vector<double> values(total);
  const auto errors = detail::parallel_for(total, threads, [&](std::size_t k) {
    const Point p = grid_point(domain, resolution, k);
    values[k] = mc_estimate(objective, p, samples, derive_seed(seed, StreamTag::kEstimate, k)).mean;
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return argmax(domain, resolution, values);
}

RiccatiSolution riccati_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                             const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R, int horizon) {
  const auto n = A.rows();
  const auto m = B.cols();
  require(horizon >= 1, ErrorCode::kConfig, "riccati: horizon must be at least 1");
  require(A.cols() == n && B.rows() == n && Q.rows() == n && Q.cols() == n && R.rows() == m &&
              R.cols() == m,
          ErrorCode::kConfig, "riccati: inconsistent matrix dimensions");
  RiccatiSolution sol;
  sol.gains.resize(static_cast<std::size_t>(horizon));
  Eigen::MatrixXd P = Q;
  for (int t = horizon - 1; t >= 0; --t) {
    const Eigen::MatrixXd S = R + B.transpose() * P * B;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
    require(lu.isInvertible(), ErrorCode::kNumerical,
            "riccati: R + B'PB is singular at step " + std::to_string(t));
    const Eigen::MatrixXd K = -lu.solve(B.transpose() * P * A);
    P = Q + A.transpose() * P * A + A.transpose() * P * B * K;
    P = 0.5 * (P + P.transpose());
    sol.gains[static_cast<std::size_t>(t)] = K;
  }
  sol.gain = sol.gains.front();
  return sol;
}

double lqr_mean_cost(const LqrParams& params, const Eigen::Matrix2d& gain, std::size_t rollouts,
                     std::uint64_t seed) {
  require(rollouts >= 1, ErrorCode::kConfig, "need at least one rollout");
  Rng rng(seed);
  std::vector<double> noise(2 * static_cast<std::size_t>(params.horizon));
  double total = 0.0;
  for (std::size_t r = 0; r < rollouts; ++r) {
    for (double& w : noise) w = rng.normal();
    total += lqr_rollout_cost(params, gain, noise);
  }
  return total / static_cast<double>(rollouts);
}

double quantile(std::vector<double> values, double q) {
  require(!values.empty(), ErrorCode::kContractViolation, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<SweepRow> budget_sweep(const Objective& objective, const Region& domain, const SweepSpec& spec) {
  require(!spec.budgets.empty(), ErrorCode::kConfig, "sweep needs at least one budget");
  require(spec.repeats >= 1, ErrorCode::kConfig, "sweep needs at least one repeat");
  for (std::size_t i = 1; i < spec.budgets.size(); ++i) {
    require(spec.budgets[i] > spec.budgets[i - 1], ErrorCode::kConfig,
            "sweep budgets must be strictly increasing");
  }
  for (const auto budget : spec.budgets) {
    MetaConfig cfg = spec.base;
    cfg.total_budget = budget;
    cfg.validate();
  }

  const std::size_t cells = spec.budgets.size() * spec.repeats;
  std::vector<MetaOutcome> outcomes(cells);
  std::vector<double> seconds(cells);
  const auto errors =
      detail::parallel_for(cells, resolve_thread_count(spec.base.threads), [&](std::size_t c) {
        MetaConfig cfg = spec.base;
        cfg.total_budget = spec.budgets[c / spec.repeats];
        cfg.seed = spec.base.seed + c % spec.repeats;
        cfg.threads = 1;
        cfg.collect_traces = false;
        const auto start = std::chrono::steady_clock::now();
        outcomes[c] = run_meta(objective, domain, cfg);
        seconds[c] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<SweepRow> rows;
  for (std::size_t b = 0; b < spec.budgets.size(); ++b) {
    SweepRow row;
    row.budget = spec.budgets[b];
    double time = 0.0;
    for (std::size_t r = 0; r < spec.repeats; ++r) {
      const MetaOutcome& o = outcomes[b * spec.repeats + r];
      row.estimates.push_back(o.best_estimate);
      time += seconds[b * spec.repeats + r];
    }
    const MetaOutcome& first = outcomes[b * spec.repeats];
    row.median = quantile(row.estimates, 0.5);
    row.q25 = quantile(row.estimates, 0.25);
    row.q75 = quantile(row.estimates, 0.75);
    row.nodes = first.candidates.front().run.tree.nodes;
    row.queries_used = first.total_queries;
    row.wall_time_s = time / static_cast<double>(spec.repeats);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto precision = out.precision(17);
  out << "budget,median,q25,q75,nodes,queries_used,wall_time_s\n";
  for (const SweepRow& r : rows) {
    out << r.budget << ',' << r.median << ',' << r.q25 << ',' << r.q75 << ',' << r.nodes << ','
        << r.queries_used << ',' << r.wall_time_s << '\n';
  }
  out.precision(precision);
}

}  // namespace hoover
