#include "fracvel/acceptance.hpp"

#include "fracvel/expr.hpp"
#include "fracvel/langevin.hpp"
#include "fracvel/lfd.hpp"
#include "fracvel/singular_ifs.hpp"
#include "fracvel/velocity.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace fracvel {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "FAIL(" << what << ") ";
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

RealFunction power_fn(double alpha, double coefficient = 1.0) {
  return as_function(FractionalPowerSeries(0.0, {{coefficient, 0.0, alpha}}));
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool near_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

void power_velocity(Outcome& o) {
  const RealFunction f = power_fn(0.5);
  const VelocityEstimate fwd = estimate_velocity(f, 0.0, 0.5, Side::forward);
  const VelocityEstimate bwd = estimate_velocity(f, 0.0, 0.5, Side::backward);
  double best = 1e9;
  for (int rep = 0; rep < 25; ++rep) {
    const auto start = Clock::now();
    (void)estimate_velocity(f, 0.0, 0.5, Side::forward);
    best = std::min(best, seconds_since(start));
  }
  o.detail << "forward=" << to_string(fwd.classification) << ":" << fwd.value
           << " backward=" << to_string(bwd.classification) << ":" << bwd.value << " time=" << best * 1e3
           << "ms ";
  o.require(fwd.classification == Classification::finite && near(fwd.value, 1.0, 1e-6), "forward value");
  o.require(bwd.classification == Classification::finite && bwd.value == 0.0, "backward value");
  o.require(best < 1e-3, "runtime");
}

void threshold_dichotomy(Outcome& o) {
  const RealFunction f = power_fn(0.5);
  const std::pair<double, Classification> cases[] = {
      {0.4, Classification::zero}, {0.5, Classification::finite}, {0.6, Classification::divergent}};
  for (const auto& [beta, expected] : cases) {
    const VelocityEstimate v = estimate_velocity(f, 0.0, beta, Side::forward);
    o.detail << "beta=" << beta << ":" << to_string(v.classification) << " ";
    o.require(v.classification == expected, "classification");
  }
}

void derham_origin(Outcome& o) {
  const auto start = Clock::now();
  for (double a : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
    constexpr int kLevels = 30;
    const IFSSpec spec{IFSFamily::derham_reparam, a, kLevels};
    const VelocityEstimate v = velocity_via_scale_sequence(spec, 0.0, a, kLevels);
    o.detail << "a=" << a << ":" << to_string(v.classification) << ":" << v.value << " ";
    o.require(v.classification == Classification::finite && near(v.value, 1.0, 1e-3), "value");
  }
  const double elapsed = seconds_since(start);
  o.detail << "time=" << elapsed << "s ";
  o.require(elapsed < 1.0, "runtime");
}

void derham_closed_form(Outcome& o) {
  const double a = std::sqrt(0.5);
  const double beta = 0.5;
  const RealFunction r = derham_function(a);
  EstimatorSchedule sched;
  sched.eps0 = 0x1p-4;
  sched.ratio = 0.5;
  sched.levels = 21; // eps_n = 2^-n, n = 4 .. 24

  bool digit_sum_ok = true;
  bool minus_one_ok = true;
  for (const char* text : {"1/2", "3/4", "5/8", "13/16"}) {
    const DyadicRational x = DyadicRational::parse(text);
    const VelocityEstimate v = estimate_velocity(r, x.to_double(), beta, Side::forward, sched);
    const double s = std::pow(std::exp2(beta) - 1.0, static_cast<int>(x.digit_sum()));
    const double s1 = std::pow(std::exp2(beta) - 1.0, static_cast<int>(x.digit_sum()) - 1);
    o.detail << text << ":" << to_string(v.classification) << ":" << v.value << " ";
    o.require(v.classification == Classification::finite, "dyadic classification");
    digit_sum_ok = digit_sum_ok && near(v.value, s, 5e-2);
    minus_one_ok = minus_one_ok && near(v.value, s1, 5e-2);
  }
  o.require(digit_sum_ok != minus_one_ok, "single convention");
  o.detail << "convention=" << (digit_sum_ok ? "s_n" : minus_one_ok ? "s_n-1" : "none") << " ";
  for (double x : {1.0 / 3.0, 1.0 / 5.0, 1.0 / 7.0}) {
    const VelocityEstimate v = estimate_velocity(r, x, beta, Side::forward, sched);
    o.detail << "x=" << x << ":" << to_string(v.classification) << " ";
    o.require(v.classification == Classification::zero, "non-dyadic classification");
  }
}

void ifs_contraction(Outcome& o) {
  constexpr int kGrid = 1 << 16;
  for (double a : {0.3, 0.4}) {
    std::vector<double> xs(kGrid);
    for (int i = 0; i < kGrid; ++i)
      xs[i] = (i + 1.0 / 3.0) / kGrid;
    std::vector<double> levels;
    std::vector<double> sups;
    std::vector<double> prev(kGrid);
    for (int i = 0; i < kGrid; ++i)
      prev[i] = neidinger_iterate(a, 1, xs[i]);
    for (int n = 1; n <= 12; ++n) {
      double sup = 0.0;
      for (int i = 0; i < kGrid; ++i) {
        const double next = neidinger_iterate(a, n + 1, xs[i]);
        sup = std::max(sup, std::abs(next - prev[i]));
        prev[i] = next;
      }
      levels.push_back(n);
      sups.push_back(std::log(sup));
    }
    const Eigen::Map<const Eigen::ArrayXd> ln(levels.data(), static_cast<Eigen::Index>(levels.size()));
    const Eigen::Map<const Eigen::ArrayXd> ls(sups.data(), static_cast<Eigen::Index>(sups.size()));
    const Eigen::ArrayXd dn = ln - ln.mean();
    const double q = std::exp((dn * (ls - ls.mean())).sum() / dn.square().sum());
    o.detail << "a=" << a << ":q=" << q << " ";
    o.require(near(q, std::max(a, 1.0 - a), 0.05), "contraction ratio");

    // Depth-8 curve on the 1025-point grid.
    bool monotone = true;
    double last = -1.0;
    for (int i = 0; i <= 1024; ++i) {
      const double v = neidinger_iterate(a, 8, i / 1024.0);
      monotone = monotone && v >= last;
      last = v;
    }
    const double mid = neidinger_iterate(a, 8, 0.5);
    o.require(monotone, "monotone");
    o.require(neidinger_iterate(a, 8, 0.0) == 0.0 && neidinger_iterate(a, 8, 1.0) == 1.0, "endpoints");
    o.require(near(mid, 1.0 - a, 1e-15), "midpoint");
    o.detail << "mid=" << mid << " ";
  }
}

void counterexample(Outcome& o) {
  const double alpha = 0.6;
  const RealFunction h = to_function(parse_function("counterexample_h(0.6)"));
  const double g06 = std::tgamma(alpha);
  for (double x : {0.25, 0.5, 1.0}) {
    const double i = rl_integral(h, 0.0, x, 1.0 - alpha, Side::forward);
    const double d = rl_derivative(h, 0.0, x, alpha, Side::forward);
    o.detail << "x=" << x << ":I=" << i << ",D=" << d << " ";
    o.require(near(i, g06, 1e-4), "integral");
    o.require(near(d, 0.0, 1e-3), "derivative of h");
  }
  const double c = std::tgamma(alpha) / std::tgamma(2.0 * alpha);
  const RealFunction g = power_fn(2.0 * alpha - 1.0, c);
  for (double x : {0.25, 0.5}) {
    const double d = rl_derivative(g, 0.0, x, alpha, Side::forward);
    const double expected = std::pow(x, alpha - 1.0);
    o.detail << "x=" << x << ":Dg=" << d << " ";
    o.require(near_rel(d, expected, 1e-3), "reconstruction of h");
  }
}

void lfd_equivalence(Outcome& o) {
  const EquivalenceReport r = equivalence_report(power_fn(0.5), 0.0, 0.5, Side::forward);
  o.detail << "ratio=" << r.gamma_ratio << " ";
  o.require(near(r.gamma_ratio, std::tgamma(1.5), 1e-3), "gamma ratio");
  const RealFunction sq = power_fn(2.0);
  const VelocityEstimate v = estimate_velocity(sq, 0.0, 0.5, Side::forward);
  const LFDResult l = kg_lfd(sq, 0.0, 0.5, Side::forward);
  o.detail << "x^2:" << to_string(v.classification) << "/" << to_string(l.classification) << " ";
  o.require(v.classification == Classification::zero && l.classification == Classification::zero, "smooth zero");
}

void beta_identity(Outcome& o) {
  double worst = 0.0;
  for (double k : {1.0, 2.0})
    for (double beta : {0.3, 0.5, 0.7})
      for (double h : {0.1, 0.01}) {
        const double m = integral_average(power_fn(beta, k), 0.0, h, beta);
        const double expected =
            k * std::tgamma(1.0 + beta) * std::tgamma(1.0 - beta) / std::tgamma(2.0) * std::pow(h, beta);
        worst = std::max(worst, std::abs(m - expected) / expected);
      }
  o.detail << "max_rel_err=" << worst << " ";
  o.require(worst <= 1e-6, "beta identity");
}

void algebra_rules(Outcome& o) {
  const RealFunction sqrt_x = power_fn(0.5);
  double worst = 0.0;
  auto record = [&](const AlgebraCheck& c, const char* what) {
    worst = std::max(worst, c.residual);
    o.require(c.residual <= 1e-3, what);
  };
  record(check_algebra_rule(AlgebraRule::product, sqrt_x, RealFunction::affine(1.0, 1.0), 0.0, 0.5, Side::forward),
         "product example");
  record(check_algebra_rule(AlgebraRule::chain_smooth_inner, sqrt_x, RealFunction::affine(2.0, 0.0), 0.0, 0.5,
                            Side::forward),
         "chain example");
  record(check_algebra_rule(AlgebraRule::quotient, sqrt_x, RealFunction::constant(2.0), 0.0, 0.5, Side::forward),
         "quotient example");

  EstimatorSchedule sched;
  sched.levels = 50;
  int pairs = 0;
  double worst_basic = 0.0;
  for (const SeriesPair& p : algebra_corpus(20240601, 20)) {
    const RealFunction f = as_function(p.f);
    const RealFunction g = as_function(p.g);
    const AlgebraRule rule = (pairs++ % 2 == 0) ? AlgebraRule::product : AlgebraRule::quotient;
    try {
      record(check_algebra_rule(rule, f, g, p.x, p.beta, Side::forward, sched), "random pair");
    } catch (const RuleInapplicable& e) {
      o.require(false, std::string("random pair: ") + e.what());
    }
    for (const RealFunction* fn : {&f, &g}) {
      const VelocityEstimate direct = estimate_velocity(*fn, p.x, p.beta, Side::forward, sched);
      const VelocityEstimate basic = basic_evaluation(*fn, p.x, p.beta, Side::forward, sched);
      o.require(direct.exists() && basic.exists(), "basic evaluation existence");
      const double diff = std::abs(direct.limit() - basic.limit());
      worst_basic = std::max(worst_basic, diff);
      o.require(diff <= 1e-3, "basic evaluation value");
    }
  }
  o.detail << "max_rule_residual=" << worst << " max_basic_diff=" << worst_basic << " ";
}

void langevin_scaling(Outcome& o) {
  const double expected[] = {2.0, 4.0, 8.0};
  int i = 0;
  for (int n : {4, 16, 64}) {
    const ScalingCheck c = partition_scaling_check(1.0, 0.5, n);
    o.detail << "N=" << n << ":" << c.ratio << " ";
    o.require(c.ratio == expected[i++], "partition ratio");
  }
  PathSpec spec;
  spec.beta = 0.4;
  spec.steps = 1 << 16;
  spec.dt = 1.0 / spec.steps;
  spec.noise_amp = 1.0;
  spec.oscillation = SignProcess::alternating;
  const HolderExponent e = path_holder_exponent(generate_path(spec), 64);
  o.detail << "exponent=" << e.exponent << " ";
  o.require(e.defined && near(e.exponent, 0.4, 0.05), "path exponent");
}

void continuity_proxy(Outcome& o) {
  const double a = std::sqrt(0.5);
  const double beta = 0.5;
  const RealFunction r = derham_function(a);
  EstimatorSchedule sched;
  sched.eps0 = 0x1p-12;
  sched.levels = 30;
  int zero = 0;
  int finite_nonzero = 0;
  constexpr int kGrid = 1024;
  for (int j = 0; j < kGrid; ++j) {
    const VelocityEstimate v = estimate_velocity(r, (j + 1.0 / 3.0) / kGrid, beta, Side::forward, sched);
    if (v.classification == Classification::zero)
      ++zero;
    else if (v.classification == Classification::finite && v.value != 0.0)
      ++finite_nonzero;
  }
  int probe_hits = 0;
  for (double x : {0.5, 0.75, 0.625, 0.8125}) {
    const VelocityEstimate v = estimate_velocity(r, x, beta, Side::forward, sched);
    if (v.classification == Classification::finite && v.value != 0.0)
      ++probe_hits;
  }
  o.detail << "zero=" << zero << "/" << kGrid << " grid_finite_nonzero=" << finite_nonzero
           << " probe_finite_nonzero=" << probe_hits << "/4 ";
  o.require(zero >= 0.99 * kGrid, "zero fraction");
  o.require(finite_nonzero == 0, "grid nonzero");
  o.require(probe_hits == 4, "probes");
}

void semigroup(Outcome& o) {
  const RealFunction fs[] = {RealFunction::constant(1.0), RealFunction::identity(), power_fn(0.5)};
  const char* names[] = {"1", "t", "t^0.5"};
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const RealFunction& f = fs[k];
    const RealFunction inner(
        [&f](double t) { return t > 0.0 ? rl_integral(f, 0.0, t, 0.4, Side::forward) : 0.0; }, "I^0.4");
    for (double x : {0.5, 1.0}) {
      const double lhs = rl_integral(inner, 0.0, x, 0.3, Side::forward);
      const double rhs = rl_integral(f, 0.0, x, 0.7, Side::forward);
      const double err = std::abs(lhs - rhs) / std::abs(rhs);
      worst = std::max(worst, err);
      o.require(err <= 1e-5, names[k]);
    }
  }
  o.detail << "max_rel_err=" << worst << " ";
}

struct Criterion {
  const char* title;
  void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {"power-function velocity", power_velocity},
    {"threshold dichotomy", threshold_dichotomy},
    {"De Rham origin via scale sequence", derham_origin},
    {"De Rham closed form vs brute force", derham_closed_form},
    {"IFS contraction and depth-8 curve", ifs_contraction},
    {"Riemann-Liouville counterexample", counterexample},
    {"LFD equivalence", lfd_equivalence},
    {"integral-average Beta identity", beta_identity},
    {"algebra rules", algebra_rules},
    {"Langevin scaling", langevin_scaling},
    {"continuity proxy on De Rham", continuity_proxy},
    {"Riemann-Liouville semigroup", semigroup},
};

} // namespace

int acceptance_count() { return static_cast<int>(std::size(kCriteria)); }

CriterionResult run_criterion(int id) {
  if (id < 1 || id > acceptance_count())
    throw ParamError("unknown acceptance criterion " + std::to_string(id));
  const Criterion& c = kCriteria[id - 1];
  Outcome o;
  o.detail.precision(10);
  const auto start = Clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << "exception: " << e.what();
  }
  std::string detail = o.detail.str();
  while (!detail.empty() && detail.back() == ' ')
    detail.pop_back();
  return {id, c.title, o.passed, detail, seconds_since(start)};
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= acceptance_count(); ++id)
    out.push_back(run_criterion(id));
  return out;
}

std::vector<SeriesPair> algebra_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  auto sign = [&] { return unit(rng) < 0.5 ? -1.0 : 1.0; };

  std::vector<SeriesPair> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x = static_cast<double>(rng() % 8) / 8.0;
    const double beta = uniform(0.3, 0.6);
    const double gap = uniform(0.3, 0.4);
    FractionalPowerSeries f(uniform(-1.0, 1.0), {{sign() * uniform(0.5, 2.0), -x, beta},
                                                 {sign() * uniform(0.5, 2.0), -x, std::min(1.0, beta + gap)}});
    // g either shares the order (finite velocity) or sits above it (zero velocity).
    const double g_order = unit(rng) < 0.5 ? beta : std::min(1.0, beta + gap);
    FractionalPowerSeries g(uniform(0.5, 2.0), {{sign() * uniform(0.5, 2.0), -x, g_order}});
    out.push_back({std::move(f), std::move(g), x, beta});
  }
  return out;
}

} // namespace fracvel
