#include "zenolab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zenolab/error.hpp"

namespace zenolab {

namespace {

using cplx = std::complex<double>;

// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int M, std::vector<double>& x, std::vector<double>& w) {
  x.assign(M, 0.0);
  w.assign(M, 0.0);
  for (int i = 0; i < (M + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (M + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= M; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = M * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[M - 1 - i] = z;
    w[i] = w[M - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

double DiscretizedBath::coupling_sum() const {
  double s = 0.0;
  for (double g : coupling) s += g * g;
  return s;
}

double DiscretizedBath::recurrence_time() const {
  double gap = 0.0;
  for (std::size_t i = 1; i < omega.size(); ++i) gap = std::max(gap, omega[i] - omega[i - 1]);
  if (omega.size() == 1) gap = omega_max;
  return 2.0 * std::numbers::pi / gap;
}

DiscretizedBath build_bath(const FormFactor& ff, double omega_max, int M, BathScheme scheme, double min_span) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw Error(ErrorCode::DomainError, "omega_max must be > 0");
  if (M < 1) throw Error(ErrorCode::InsufficientModes, "need at least one bath mode");
  DiscretizedBath b;
  b.omega_max = omega_max;
  b.scheme = scheme;
  if (scheme == BathScheme::Linear) {
    const double d = omega_max / M;
    for (int i = 0; i < M; ++i) {
      b.omega.push_back((i + 0.5) * d);
      b.weight.push_back(d);
    }
  } else {
    std::vector<double> x, w;
    gauss_legendre(M, x, w);
    for (int i = 0; i < M; ++i) {
      b.omega.push_back(0.5 * omega_max * (x[i] + 1.0));
      b.weight.push_back(0.5 * omega_max * w[i]);
    }
  }
  for (int i = 0; i < M; ++i) b.coupling.push_back(std::sqrt(ff(b.omega[i]) * b.weight[i]));
  if (min_span > 0.0 && b.recurrence_time() < min_span) {
    std::ostringstream os;
    os << "recurrence time " << b.recurrence_time() << " shorter than requested span " << min_span
       << "; increase M or lower omega_max";
    throw Error(ErrorCode::InsufficientModes, os.str());
  }
  return b;
}

SingleExcitationModel::SingleExcitationModel(const DiscretizedBath& bath, double omega, double K, Variant v)
    : bath_(bath), omega_(omega), K_(K), variant_(v) {
  if (!(omega > 0.0)) throw Error(ErrorCode::DomainError, "Omega must be > 0");
  if (!(K >= 0.0) || !std::isfinite(K)) throw Error(ErrorCode::DomainError, "K must be finite and >= 0");
  const Eigen::Index M = static_cast<Eigen::Index>(bath.size());
  const Eigen::Index d = v == Variant::WithAncilla ? 2 * M + 1 : M + 1;
  H_ = Eigen::MatrixXd::Zero(d, d);
  H_(0, 0) = 0.5 * omega;
  for (Eigen::Index i = 0; i < M; ++i) {
    H_(1 + i, 1 + i) = -0.5 * omega + bath.omega[i];
    H_(0, 1 + i) = H_(1 + i, 0) = bath.coupling[i];
    if (v == Variant::WithAncilla) {
      H_(1 + M + i, 1 + M + i) = -0.5 * omega + bath.omega[i];
      H_(1 + i, 1 + M + i) = H_(1 + M + i, 1 + i) = K;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H_);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "eigendecomposition failed");
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
  weights_ = vectors_.row(0).transpose().cwiseAbs2();
}

SingleExcitationModel SingleExcitationModel::free_model(const DiscretizedBath& bath, double omega) {
  return SingleExcitationModel(bath, omega, 0.0, Variant::FreeOrZeno);
}

SingleExcitationModel SingleExcitationModel::ancilla_model(const DiscretizedBath& bath, double omega, double K) {
  return SingleExcitationModel(bath, omega, K, Variant::WithAncilla);
}

cplx SingleExcitationModel::survival_amplitude(double t) const {
  cplx a = 0.0;
  for (Eigen::Index k = 0; k < energies_.size(); ++k) a += weights_(k) * std::exp(cplx(0.0, -energies_(k) * t));
  return a;
}

Eigen::VectorXcd SingleExcitationModel::state(double t) const {
  Eigen::VectorXcd c(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) c(k) = vectors_(0, k) * std::exp(cplx(0.0, -energies_(k) * t));
  return vectors_.cast<cplx>() * c;
}

Eigen::MatrixXcd SingleExcitationModel::propagator(double t) const {
  Eigen::VectorXcd phase(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) phase(k) = std::exp(cplx(0.0, -energies_(k) * t));
  const Eigen::MatrixXcd V = vectors_.cast<cplx>();
  return V * phase.asDiagonal() * V.transpose();
}

namespace {

void check_window(const SingleExcitationModel& m, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::DomainError, "time must be finite and >= 0");
  const double trec = m.bath().recurrence_time();
  if (t > trec) {
    std::ostringstream os;
    os << "t = " << t << " beyond the bath recurrence time " << trec;
    throw Error(ErrorCode::RecurrenceWindowExceeded, os.str());
  }
}

}  // namespace

double free_survival(const SingleExcitationModel& model, double t) {
  check_window(model, t);
  return std::norm(model.survival_amplitude(t));
}

double zeno_survival(const SingleExcitationModel& model, double tau, int N) {
  if (!(tau > 0.0)) throw Error(ErrorCode::DomainError, "tau must be > 0");
  if (N < 1) throw Error(ErrorCode::DomainError, "N must be >= 1");
  return std::pow(free_survival(model, tau), N);
}

double zeno_effective_rate(const SingleExcitationModel& model, double tau) {
  const double p = zeno_survival(model, tau, 1);
  if (!(p > 0.0)) throw Error(ErrorCode::NonPositiveProbability, "single-interval survival is zero");
  return -std::log(p) / tau;
}

KickTrace kick_trace(const SingleExcitationModel& model, double tau, int N) {
  if (N < 2 || N % 2 != 0) {
    std::ostringstream os;
    os << "kick sequences need an even number of cycles, got " << N;
    throw Error(ErrorCode::OddN, os.str());
  }
  if (!(tau > 0.0)) throw Error(ErrorCode::DomainError, "tau must be > 0");
  check_window(model, N * tau);
  Eigen::MatrixXcd step = model.propagator(tau);
  step.bottomRows(step.rows() - 1) *= -1.0;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(model.dim());
  psi(0) = 1.0;
  KickTrace tr;
  tr.t.push_back(0.0);
  tr.survival.push_back(1.0);
  tr.norm.push_back(1.0);
  Eigen::VectorXcd next(model.dim());
  for (int n = 1; n <= N; ++n) {
    next.noalias() = step * psi;
    psi.swap(next);
    tr.t.push_back(n * tau);
    tr.survival.push_back(std::norm(psi(0)));
    tr.norm.push_back(psi.squaredNorm());
  }
  return tr;
}

double kick_survival(const SingleExcitationModel& model, double tau, int N) {
  return kick_trace(model, tau, N).survival.back();
}

double continuous_survival(const SingleExcitationModel& model, double t) {
  return free_survival(model, t);
}

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 10) {
    std::ostringstream os;
    os << "need at least 10 samples in the fit window, got " << samples.size();
    throw Error(ErrorCode::WindowTooShort, os.str());
  }
  const double n = static_cast<double>(samples.size());
  double st = 0.0, sy = 0.0;
  std::vector<double> y;
  y.reserve(samples.size());
  for (const auto& [t, p] : samples) {
    if (!(p > 0.0)) {
      std::ostringstream os;
      os << "probability " << p << " at t = " << t;
      throw Error(ErrorCode::NonPositiveProbability, os.str());
    }
    y.push_back(-std::log(p));
    st += t;
    sy += y.back();
  }
  const double tm = st / n, ym = sy / n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double dt = samples[i].first - tm;
    stt += dt * dt;
    sty += dt * (y[i] - ym);
  }
  if (!(stt > 0.0)) throw Error(ErrorCode::WindowTooShort, "fit window has zero width");
  DecayFit f;
  f.rate = sty / stt;
  f.intercept = ym - f.rate * tm;
  double rss = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double r = y[i] - (f.intercept + f.rate * samples[i].first);
    rss += r * r;
  }
  f.residual = std::sqrt(rss / n);
  f.samples = samples.size();
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  f.fit_window = {lo->first, hi->first};
  return f;
}

DecayFit fit_survival(const SingleExcitationModel& model, double lo_frac, double hi_frac, int samples) {
  if (!(lo_frac >= 0.0) || !(hi_frac > lo_frac) || hi_frac > 1.0)
    throw Error(ErrorCode::DomainError, "fit window fractions must satisfy 0 <= lo < hi <= 1");
  const double trec = model.bath().recurrence_time();
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < samples; ++i) {
    const double t = trec * (lo_frac + (hi_frac - lo_frac) * i / std::max(1, samples - 1));
    pts.emplace_back(t, free_survival(model, t));
  }
  return fit_decay_rate(pts);
}

DecayFit fit_kick(const SingleExcitationModel& model, double tau, int N) {
  const KickTrace tr = kick_trace(model, tau, N);
  std::vector<std::pair<double, double>> pts;
  for (int n = N / 2; n <= N; ++n)
    if (n % 2 == 0) pts.emplace_back(tr.t[n], tr.survival[n]);
  return fit_decay_rate(pts);
}

}  // namespace zenolab
