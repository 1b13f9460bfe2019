#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace dualarm {

/// Density of the distance between two independent uniform points in the
/// unit square. Throws std::domain_error outside [0, sqrt(2)].
double line_length_pdf(double l);

/// Closed-form CDF of line_length_pdf.
double line_length_cdf(double l);

/// Integral of line_length_pdf over its domain (adaptive Gauss-Kronrod).
double line_length_normalization();
/// E[l] by adaptive quadrature.
double expected_length_quadrature();
/// E[l] in closed form, (2 + sqrt(2) + 5 ln(1 + sqrt(2))) / 15.
double expected_length_exact();
/// E[max(l1, l2)] for independent lengths by quadrature.
double expected_max_length_quadrature();

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo E[max(l1, l2)] for two independent random segments.
Estimate expected_max_length_mc(std::uint64_t samples, std::uint64_t seed);

/// Makespan over single-arm cost ratio with the published constants:
/// 1/2 + 4 pi r c_t / (c_pd + 0.52 c_t).
double dual_ratio_formula(double c_pd, double c_t, double r);
/// Synchronized variant: 1/2 + (0.07 + 4 pi r) c_t / (c_pd + 0.52 c_t).
double sync_ratio_formula(double c_pd, double c_t, double r);

struct RatioEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;  // trials
  int n = 0;
  int k = 2;
  double c_pd = 0.0;
  double c_t = 1.0;
  double r = 0.0;
  bool with_transit = false;
};

struct RatioOptions {
  double c_pd = 0.0;
  double c_t = 1.0;
  double r = 0.0;
  /// Adds transits: the single arm pays a minimum-cost assignment from goals
  /// to starts; the pairs pay a minimum-cost assignment from pair to pair,
  /// each hand-over costing the longer arm transit under the better matching.
  bool with_transit = false;
};

/// Per trial: n random transfers in the unit square, paired at random into
/// synchronized steps. Returns the mean of dual over single cost. Conflicting
/// pairs (closer than 2r) pay 2 pi r c_t. Requires even n and trials >= 1.
RatioEstimate sync_ratio_experiment(int n, int trials, const RatioOptions& options, std::uint64_t seed);

/// k piles of n/k transfers each, r = 0: mean of the makespan of k arms over
/// the single-arm cost. k = 2 draws the same samples as sync_ratio_experiment.
RatioEstimate k_arm_ratio_mc(int k, int n, int trials, double c_pd, double c_t, std::uint64_t seed);

/// Header plus one row per estimate; doubles at round-trip precision.
void write_ratio_csv(std::ostream& out, const std::vector<RatioEstimate>& rows);

}  // namespace dualarm
