#include "zenolab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "zenolab/error.hpp"

namespace zenolab {

namespace {

// 21-point Kronrod rule with its embedded 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525163161, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

enum class Map { Finite, RightTail, LeftTail };

struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  Map map = Map::Finite;
  double anchor = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct ByError {
  bool operator()(const Segment& a, const Segment& b) const { return a.error < b.error; }
};

class Kronrod {
 public:
  explicit Kronrod(const Integrand& f) : f_(f) {}

  double transformed(const Segment& s, double t) {
    ++evaluations_;
    double v = 0.0;
    switch (s.map) {
      case Map::Finite:
        v = f_(t);
        break;
      case Map::RightTail: {
        if (t >= 1.0) return 0.0;
        const double d = 1.0 - t;
        v = f_(s.anchor + t / d) / (d * d);
        break;
      }
      case Map::LeftTail: {
        if (t >= 1.0) return 0.0;
        const double d = 1.0 - t;
        v = f_(s.anchor - t / d) / (d * d);
        break;
      }
    }
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand is not finite near t=" << t;
      throw Error(ErrorCode::NoConvergence, os.str());
    }
    return v;
  }

  void apply(Segment& s) {
    const double center = 0.5 * (s.lo + s.hi);
    const double half = 0.5 * (s.hi - s.lo);
    const double fc = transformed(s, center);
    double kronrod = fc * kWgk[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    for (int j = 0; j < 10; ++j) {
      const double dx = half * kXgk[j];
      const double f1 = transformed(s, center - dx);
      const double f2 = transformed(s, center + dx);
      kronrod += kWgk[j] * (f1 + f2);
      abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    s.value = kronrod * half;
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
    s.error = std::max(std::abs((kronrod - gauss) * half), roundoff);
  }

  long evaluations() const { return evaluations_; }

 private:
  const Integrand& f_;
  long evaluations_ = 0;
};

std::vector<double> sorted_splits(const std::vector<double>& splits, double a, double b) {
  std::vector<double> pts;
  pts.reserve(splits.size());
  for (double p : splits)
    if (std::isfinite(p) && p > a && p < b) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1)
    throw Error(ErrorCode::DomainError, "quadrature tolerances must be positive");
  if (std::isnan(a) || std::isnan(b)) throw Error(ErrorCode::DomainError, "NaN integration bound");
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, spec);
    r.value = -r.value;
    return r;
  }

  std::vector<double> pts = sorted_splits(spec.split_points, a, b);
  if (std::isinf(a) && std::isinf(b) && pts.empty()) pts.push_back(0.0);

  std::vector<Segment> initial;
  const double first = pts.empty() ? b : pts.front();
  const double last = pts.empty() ? a : pts.back();
  if (std::isinf(a)) initial.push_back({0.0, 1.0, Map::LeftTail, first});
  {
    std::vector<double> edges;
    if (!std::isinf(a)) edges.push_back(a);
    edges.insert(edges.end(), pts.begin(), pts.end());
    if (!std::isinf(b)) edges.push_back(b);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      initial.push_back({edges[i], edges[i + 1], Map::Finite, 0.0});
  }
  if (std::isinf(b)) initial.push_back({0.0, 1.0, Map::RightTail, last});

  Kronrod rule(f);
  std::priority_queue<Segment, std::vector<Segment>, ByError> active;
  std::vector<Segment> frozen;
  double total = 0.0;
  double total_err = 0.0;
  for (auto& s : initial) {
    rule.apply(s);
    total += s.value;
    total_err += s.error;
    active.push(s);
  }

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  long bisections = 0;
  while (total_err > tolerance() && !active.empty()) {
    if (bisections >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "error estimate " << total_err << " above tolerance " << tolerance() << " after "
         << bisections << " subdivisions";
      throw Error(ErrorCode::NoConvergence, os.str());
    }
    Segment worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        (worst.hi - worst.lo) <= 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
      frozen.push_back(worst);
      continue;
    }
    Segment left{worst.lo, mid, worst.map, worst.anchor};
    Segment right{mid, worst.hi, worst.map, worst.anchor};
    rule.apply(left);
    rule.apply(right);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    ++bisections;
    if (bisections % 4096 == 0) {
      // Resum from scratch to keep the running totals from drifting.
      total = 0.0;
      total_err = 0.0;
      auto copy = active;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
      for (const auto& s : frozen) {
        total += s.value;
        total_err += s.error;
      }
    }
  }

  // Final compensated resummation.
  std::vector<Segment> all = std::move(frozen);
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) {
    return std::abs(x.value) < std::abs(y.value);
  });
  double sum = 0.0, comp = 0.0, err = 0.0;
  for (const auto& s : all) {
    const double y = s.value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    err += s.error;
  }
  if (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(sum))) {
    std::ostringstream os;
    os << "error estimate " << err << " above tolerance (roundoff-limited)";
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return {sum, err, rule.evaluations(), static_cast<long>(all.size())};
}

QuadratureResult integrate_line(const Integrand& f, const QuadratureSpec& spec) {
  return integrate(f, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), spec);
}

double lambert_w_m1(double x) {
  constexpr double inv_e = 1.0 / std::numbers::e;
  if (std::isnan(x) || x >= 0.0 || x < -inv_e * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
    std::ostringstream os;
    os << "lambert_w_m1 requires x in [-1/e, 0), got " << x;
    throw Error(ErrorCode::DomainError, os.str());
  }
  const double q = 1.0 + std::numbers::e * x;  // distance from the branch point
  if (q <= 0.0) return -1.0;

  double w;
  if (x < -0.25) {
    const double p = -std::sqrt(2.0 * q);
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  // The series seed is already exact to rounding this close to -1/e, where the
  // Halley denominator vanishes.
  if (q < 1e-10) return std::min(w, -1.0);

  for (int it = 0; it < 32; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) break;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return std::min(w, -1.0);
}

double zeta_odd(int m) {
  if (m < 3 || m > 15 || m % 2 == 0) {
    std::ostringstream os;
    os << "zeta_odd requires odd m in [3, 15], got " << m;
    throw Error(ErrorCode::DomainError, os.str());
  }
  constexpr int kTerms = 10;
  // B_{2j} / (2j)!
  constexpr std::array<double, 7> kB = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0,
      7.0 / 6.0 / 87178291200.0};
  const double s = m;
  double sum = 0.0;
  for (int k = kTerms - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double n = kTerms;
  sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  for (int j = 1; j <= static_cast<int>(kB.size()); ++j) {
    sum += kB[j - 1] * rising * std::pow(n, -s - 2.0 * j + 1.0);
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
  }
  return sum;
}

double trigamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "trigamma requires x > 0");
  double acc = 0.0;
  while (x < 20.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / x;
  const double r2 = r * r;
  const double series =
      r + 0.5 * r2 +
      r * r2 * (1.0 / 6.0 + r2 * (-1.0 / 30.0 + r2 * (1.0 / 42.0 + r2 * (-1.0 / 30.0 + r2 * 5.0 / 66.0))));
  return acc + series;
}

double half_integer_inverse_square_tail(long j_max) {
  if (j_max < -1) throw Error(ErrorCode::DomainError, "j_max must be >= -1");
  return trigamma(static_cast<double>(j_max) + 1.5);
}

double bose_occupation(double omega, double beta) {
  if (omega == 0.0 || std::isnan(omega)) throw Error(ErrorCode::DomainError, "Bose occupation undefined at omega = 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::DomainError, "inverse temperature must be positive");
  if (std::isinf(beta)) return omega > 0.0 ? 0.0 : -1.0;
  const double x = beta * omega;
  if (std::abs(x) < 1e-4) return 1.0 / x - 0.5 + x / 12.0;
  return 1.0 / std::expm1(x);
}

double alpha_n(int n) {
  if (n < 2) throw Error(ErrorCode::DomainError, "alpha_n requires n >= 2");
  return 0.5 * std::sqrt(std::numbers::pi) * std::exp(std::lgamma(n - 1.5) - std::lgamma(n - 1.0));
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) throw Error(ErrorCode::DomainError, "log grid needs 0 < lo < hi and >= 2 points");
  std::vector<double> g(points);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) g[i] = std::exp(a + (b - a) * i / (points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> lin_grid(double lo, double hi, int points) {
  if (!(hi > lo) || points < 2) throw Error(ErrorCode::DomainError, "linear grid needs lo < hi and >= 2 points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

}  // namespace zenolab
