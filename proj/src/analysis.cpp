#include "dualarm/analysis.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dualarm/atsp.hpp"
#include "dualarm/motion.hpp"
#include "dualarm/random.hpp"

namespace dualarm {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

constexpr double kQuadTol = 1e-12;
template <class F>
double integrate(F f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, kQuadTol);
}

// Integrates over [0, sqrt(2)] with extra breakpoints where the integrand has
// kinks.
template <class F>
double integrate_domain(F f, std::vector<double> breaks) {
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  breaks.push_back(sqrt2);
  std::sort(breaks.begin(), breaks.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) sum += integrate(f, breaks[i], breaks[i + 1]);
  return sum;
}

// Neumaier summation; order-stable enough to keep fixed-seed runs identical.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class MeanVar {
 public:
  void add(double x) {
    sum_.add(x);
    squares_.add(x * x);
    ++count_;
  }
  double mean() const { return sum_.value() / static_cast<double>(count_); }
  double stderr_of_mean() const {
    if (count_ < 2) return 0.0;
    const double m = mean();
    const double var = (squares_.value() - static_cast<double>(count_) * m * m) / static_cast<double>(count_ - 1);
    return std::sqrt(std::max(0.0, var) / static_cast<double>(count_));
  }
  std::uint64_t count() const { return count_; }

 private:
  Accumulator sum_;
  Accumulator squares_;
  std::uint64_t count_ = 0;
};

struct Transfer {
  Point2 start;
  Point2 goal;
  double length() const { return distance(start, goal); }
};

std::vector<Transfer> sample_transfers(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Transfer> out(n);
  for (auto& t : out) {
    t.start = {u(rng), u(rng)};
    t.goal = {u(rng), u(rng)};
  }
  return out;
}

void require_trials(int n, int trials) {
  if (n < 1) throw std::invalid_argument("ratio experiment: n must be positive");
  if (trials < 1) throw std::invalid_argument("ratio experiment: trials must be >= 1");
}

}  // namespace

double line_length_pdf(double l) {
  if (!(l >= 0.0 && l <= sqrt2)) throw std::domain_error("line_length_pdf: l outside [0, sqrt(2)]");
  if (l <= 1.0) return 2.0 * pi * l - 8.0 * l * l + 2.0 * l * l * l;
  const double inv = 1.0 / l;
  return 4.0 * l * std::asin(inv) - 4.0 * l * std::acos(inv) + 8.0 * l * std::sqrt(l * l - 1.0) -
         2.0 * l * l * l - 4.0 * l;
}

double line_length_normalization() {
  return integrate_domain([](double l) { return line_length_pdf(l); }, {});
}

double expected_length_quadrature() {
  return integrate_domain([](double l) { return l * line_length_pdf(l); }, {});
}

double expected_length_exact() {
  return (2.0 + sqrt2 + 5.0 * std::log(1.0 + sqrt2)) / 15.0;
}

double line_length_cdf(double l) {
  if (!(l >= 0.0 && l <= sqrt2)) throw std::domain_error("line_length_cdf: l outside [0, sqrt(2)]");
  const double l2 = l * l;
  if (l <= 1.0) return pi * l2 - 8.0 / 3.0 * l2 * l + 0.5 * l2 * l2;
  const double root = std::sqrt(l2 - 1.0);
  return 1.0 / 3.0 - 0.5 * l2 * l2 + 8.0 / 3.0 * l2 * root + 2.0 * l2 * (std::asin(1.0 / l) - std::acos(1.0 / l)) -
         2.0 * l2 + 4.0 / 3.0 * root;
}

// max(l1, l2) has CDF F^2, so its mean is the integral of 2 l p(l) F(l).
double expected_max_length_quadrature() {
  return integrate_domain([](double l) { return 2.0 * l * line_length_pdf(l) * line_length_cdf(l); }, {});
}

Estimate expected_max_length_mc(std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("expected_max_length_mc: no samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MeanVar stats;
  auto length = [&] {
    const Point2 a{u(rng), u(rng)};
    const Point2 b{u(rng), u(rng)};
    return distance(a, b);
  };
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double l1 = length();
    const double l2 = length();
    stats.add(std::max(l1, l2));
  }
  return {stats.mean(), stats.stderr_of_mean(), stats.count()};
}

double dual_ratio_formula(double c_pd, double c_t, double r) {
  const double denom = c_pd + 0.52 * c_t;
  if (denom == 0.0) throw std::domain_error("dual_ratio_formula: c_pd + 0.52 c_t is zero");
  return 0.5 + 4.0 * pi * r * c_t / denom;
}

double sync_ratio_formula(double c_pd, double c_t, double r) {
  const double denom = c_pd + 0.52 * c_t;
  if (denom == 0.0) throw std::domain_error("sync_ratio_formula: c_pd + 0.52 c_t is zero");
  return 0.5 + (0.07 + 4.0 * pi * r) * c_t / denom;
}

RatioEstimate sync_ratio_experiment(int n, int trials, const RatioOptions& options, std::uint64_t seed) {
  require_trials(n, trials);
  if (n % 2 != 0) throw std::invalid_argument("sync_ratio_experiment: n must be even");
  CostParams params;
  params.c_t = options.c_t;
  params.c_pd = options.c_pd;
  params.r = options.r;

  MeanVar stats;
  for (int trial = 0; trial < trials; ++trial) {
    // Samples are independent, so consecutive pairs form a random split.
    const std::vector<Transfer> t = sample_transfers(n, mix_seed(seed, trial));
    Accumulator single;
    Accumulator dual;
    for (int i = 0; i < n; ++i) single.add(options.c_pd + t[i].length() * options.c_t);
    for (int i = 0; i < n; i += 2) {
      CoordQuery q;
      q.kind = SegmentKind::kTransfer;
      q.arms = {Segment{t[i].start, t[i].goal}, Segment{t[i + 1].start, t[i + 1].goal}};
      dual.add(coordinated_cost(q, params).cost);
    }
    if (options.with_transit) {
      CostMatrix assign(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) assign(i, j) = distance(t[i].goal, t[j].start) * options.c_t;
      }
      single.add(min_cost_assignment(assign));
      // Same relaxation for the pairs: each pair hands over to another pair,
      // the arms take whichever matching finishes sooner.
      const int m = n / 2;
      CostMatrix pair_assign(m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          const Point2& g1 = t[2 * a].goal;
          const Point2& g2 = t[2 * a + 1].goal;
          const Point2& s1 = t[2 * b].start;
          const Point2& s2 = t[2 * b + 1].start;
          const double straight = std::max(distance(g1, s1), distance(g2, s2));
          const double crossed = std::max(distance(g1, s2), distance(g2, s1));
          pair_assign(a, b) = std::min(straight, crossed) * options.c_t;
        }
      }
      dual.add(min_cost_assignment(pair_assign));
    }
    stats.add(dual.value() / single.value());
  }

  RatioEstimate est;
  est.mean = stats.mean();
  est.std_error = stats.stderr_of_mean();
  est.samples = stats.count();
  est.n = n;
  est.k = 2;
  est.c_pd = options.c_pd;
  est.c_t = options.c_t;
  est.r = options.r;
  est.with_transit = options.with_transit;
  return est;
}

RatioEstimate k_arm_ratio_mc(int k, int n, int trials, double c_pd, double c_t, std::uint64_t seed) {
  require_trials(n, trials);
  if (k < 2) throw std::invalid_argument("k_arm_ratio_mc: k must be >= 2");
  if (n % k != 0) throw std::invalid_argument("k_arm_ratio_mc: k must divide n");

  MeanVar stats;
  for (int trial = 0; trial < trials; ++trial) {
    const std::vector<Transfer> t = sample_transfers(n, mix_seed(seed, trial));
    Accumulator single;
    Accumulator multi;
    for (int i = 0; i < n; ++i) single.add(c_pd + t[i].length() * c_t);
    for (int i = 0; i < n; i += k) {
      double longest = 0.0;
      for (int j = i; j < i + k; ++j) longest = std::max(longest, t[j].length());
      multi.add(c_pd + longest * c_t);
    }
    stats.add(multi.value() / single.value());
  }

  RatioEstimate est;
  est.mean = stats.mean();
  est.std_error = stats.stderr_of_mean();
  est.samples = stats.count();
  est.n = n;
  est.k = k;
  est.c_pd = c_pd;
  est.c_t = c_t;
  return est;
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioEstimate>& rows) {
  out << "n,k,trials,c_pd,c_t,r,with_transit,mean,stderr\n";
  auto num = [](double x) {
    char buf[40];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, x).ptr);
  };
  for (const auto& e : rows) {
    out << e.n << ',' << e.k << ',' << e.samples << ',' << num(e.c_pd) << ',' << num(e.c_t) << ',' << num(e.r)
        << ',' << (e.with_transit ? 1 : 0) << ',' << num(e.mean) << ',' << num(e.std_error) << '\n';
  }
}

}  // namespace dualarm
