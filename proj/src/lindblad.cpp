#include "zenolab/lindblad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

#include "zenolab/error.hpp"

namespace zenolab {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_rate(double r, const char* name) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    std::ostringstream os;
    os << name << " must be finite and >= 0, got " << r;
    throw Error(ErrorCode::DomainError, os.str());
  }
}

Eigen::Matrix3cd dressed_basis() {
  Eigen::Matrix3cd u = Eigen::Matrix3cd::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = kInvSqrt2;
  u(2, 1) = kInvSqrt2;
  u(1, 2) = kInvSqrt2;
  u(2, 2) = -kInvSqrt2;
  return u;
}

}  // namespace

void validate_state(const Eigen::MatrixXcd& rho, double herm_tol, double trace_tol, double eig_tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw Error(ErrorCode::InvalidState, "density matrix must be square");
  if (!rho.allFinite()) throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol) {
    std::ostringstream os;
    os << "not Hermitian (max |rho - rho^dag| = " << herm << ")";
    throw Error(ErrorCode::InvalidState, os.str());
  }
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > trace_tol) {
    std::ostringstream os;
    os << "trace " << tr.real() << " != 1";
    throw Error(ErrorCode::InvalidState, os.str());
  }
  const Eigen::MatrixXcd sym = 0.5 * (rho + rho.adjoint());
  const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (lo < eig_tol) {
    std::ostringstream os;
    os << "negative eigenvalue " << lo;
    throw Error(ErrorCode::InvalidState, os.str());
  }
}

QubitDensityMatrix::QubitDensityMatrix(const Eigen::Matrix2cd& m) : m_(m) { validate_state(m_); }

QubitDensityMatrix QubitDensityMatrix::up() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = 1.0;
  return QubitDensityMatrix(m);
}

QubitDensityMatrix QubitDensityMatrix::down() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(1, 1) = 1.0;
  return QubitDensityMatrix(m);
}

QubitDensityMatrix QubitDensityMatrix::maximally_mixed() {
  return QubitDensityMatrix(0.5 * Eigen::Matrix2cd::Identity());
}

QubitDensityMatrix QubitDensityMatrix::from_bloch(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  if (r > 1.0 + 1e-12) throw Error(ErrorCode::InvalidState, "Bloch vector longer than 1");
  Eigen::Matrix2cd m;
  m(0, 0) = 0.5 * (1.0 + z);
  m(1, 1) = 0.5 * (1.0 - z);
  m(0, 1) = cplx(0.5 * x, -0.5 * y);
  m(1, 0) = std::conj(m(0, 1));
  return QubitDensityMatrix(m);
}

QubitGenerator make_qubit_generator(double omega, double gamma0, double gamma_emit, double gamma_abs, double beta) {
  check_rate(gamma0, "gamma0");
  check_rate(gamma_emit, "gamma_emit");
  check_rate(gamma_abs, "gamma_abs");
  if (!(beta > 0.0)) throw Error(ErrorCode::DomainError, "inverse temperature must be > 0");
  QubitGenerator g{omega, gamma0, gamma_emit, gamma_abs, beta, false};
  const double expected = std::isinf(beta) ? 0.0 : std::exp(-beta * omega) * gamma_emit;
  const double scale = std::max(gamma_emit, gamma_abs);
  g.detailed_balance = scale == 0.0 || std::abs(gamma_abs - expected) <= 1e-10 * scale;
  return g;
}

QubitGenerator build_qubit_generator(const ThermalSpectralDensity& tsd_flip, const ThermalSpectralDensity& tsd_dephase,
                                     double omega, const ControlStrategy& strategy) {
  if (!(omega > 0.0)) throw Error(ErrorCode::DomainError, "Omega must be > 0");
  double g0 = 0.0, ge = 0.0, ga = 0.0;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Free>) {
          ge = golden_rule_rate(tsd_flip, omega);
          ga = golden_rule_rate(tsd_flip, -omega);
          g0 = dephasing_rate(tsd_dephase);
        } else if constexpr (std::is_same_v<T, ZenoMeasurement>) {
          ge = zeno_rate(tsd_flip, omega, s.tau);
          ga = zeno_rate(tsd_flip, -omega, s.tau);
          g0 = tsd_dephase.base.g == 0.0 ? 0.0 : zeno_rate(tsd_dephase, 0.0, s.tau);
        } else if constexpr (std::is_same_v<T, BangBangKick>) {
          ge = kick_rate(tsd_flip, omega, s.tau).gamma;
          ga = kick_rate(tsd_flip, -omega, s.tau).gamma;
          g0 = kick_rate(tsd_dephase, 0.0, s.tau).gamma;
        } else {
          ge = continuous_rate(tsd_flip, omega, s.K);
          ga = continuous_rate(tsd_flip, -omega, s.K);
          g0 = continuous_rate(tsd_dephase, 0.0, s.K);
        }
      },
      strategy);
  return make_qubit_generator(omega, g0, ge, ga, tsd_flip.beta);
}

QubitDensityMatrix evolve(const QubitDensityMatrix& rho0, const QubitGenerator& gen, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::DomainError, "time must be finite and >= 0");
  const Eigen::Matrix2cd& r = rho0.matrix();
  const double g1 = gen.longitudinal_rate();
  const double p0 = r(0, 0).real();
  double p = p0;
  if (g1 > 0.0) {
    const double pinf = gen.gamma_abs / g1;
    p = pinf + (p0 - pinf) * std::exp(-g1 * t);
  }
  const cplx c = r(0, 1) * std::exp(cplx(-gen.transverse_rate() * t, -gen.omega * t));
  Eigen::Matrix2cd m;
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  m(0, 1) = c;
  m(1, 0) = std::conj(c);
  return QubitDensityMatrix(m);
}

QubitDensityMatrix stationary_state(const QubitGenerator& gen) {
  const double g1 = gen.longitudinal_rate();
  if (!(g1 > 0.0)) throw Error(ErrorCode::NoRelaxation, "no spin-flip channel: populations never relax");
  const double p = gen.gamma_abs / g1;
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  return QubitDensityMatrix(m);
}

Observables observables(const QubitDensityMatrix& rho) {
  const auto& m = rho.matrix();
  validate_state(m);
  Observables o;
  o.p_up = m(0, 0).real();
  o.bloch = {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
  o.purity = m.cwiseAbs2().sum();
  o.coherence = std::abs(m(0, 1));
  return o;
}

Eigen::MatrixXcd lindblad_superoperator(const Eigen::MatrixXcd& H, const std::vector<Eigen::MatrixXcd>& jumps) {
  const Eigen::Index d = H.rows();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(d, d);
  const cplx i(0.0, 1.0);
  Eigen::MatrixXcd S = -i * (kron(I, H) - kron(H.transpose(), I));
  for (const auto& L : jumps) {
    const Eigen::MatrixXcd LdL = L.adjoint() * L;
    S += kron(L.conjugate(), L) - 0.5 * kron(I, LdL) - 0.5 * kron(LdL.transpose(), I);
  }
  return S;
}

Eigen::MatrixXcd evolve_superoperator(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& rho, double t) {
  const Eigen::Index d = rho.rows();
  const Eigen::MatrixXcd E = (S * t).exp();
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), d * d);
  Eigen::VectorXcd w = E * v;
  return Eigen::Map<Eigen::MatrixXcd>(w.data(), d, d);
}

Eigen::MatrixXcd qubit_superoperator(const QubitGenerator& gen) {
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2, 2);
  H(0, 0) = 0.5 * gen.omega;
  H(1, 1) = -0.5 * gen.omega;
  Eigen::MatrixXcd sm = Eigen::MatrixXcd::Zero(2, 2), sp = Eigen::MatrixXcd::Zero(2, 2), sz = Eigen::MatrixXcd::Zero(2, 2);
  sm(1, 0) = 1.0;
  sp(0, 1) = 1.0;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  return lindblad_superoperator(
      H, {std::sqrt(gen.gamma_emit) * sm, std::sqrt(gen.gamma_abs) * sp, std::sqrt(gen.gamma0) * sz});
}

Eigen::Matrix3cd ThreeLevelGenerator::hamiltonian() const {
  Eigen::Matrix3cd H = Eigen::Matrix3cd::Zero();
  H(0, 0) = 0.5 * omega;
  H(1, 1) = -0.5 * omega + K;
  H(2, 2) = -0.5 * omega - K;
  return H;
}

std::vector<Eigen::MatrixXcd> ThreeLevelGenerator::jumps() const {
  Eigen::MatrixXcd xp = Eigen::MatrixXcd::Zero(3, 3), xm = Eigen::MatrixXcd::Zero(3, 3);
  xp(1, 0) = kInvSqrt2;
  xm(2, 0) = kInvSqrt2;
  return {std::sqrt(rates.gamma_plus) * xp, std::sqrt(rates.gamma_minus) * xm,
          std::sqrt(rates.gamma_bar_plus) * Eigen::MatrixXcd(xp.adjoint()),
          std::sqrt(rates.gamma_bar_minus) * Eigen::MatrixXcd(xm.adjoint())};
}

Eigen::MatrixXcd ThreeLevelGenerator::superoperator() const {
  return lindblad_superoperator(Eigen::MatrixXcd(hamiltonian()), jumps());
}

Eigen::Matrix3cd ThreeLevelGenerator::evolve(const Eigen::Matrix3cd& rho_dressed, double t) const {
  validate_state(rho_dressed);
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::DomainError, "time must be finite and >= 0");
  return evolve_superoperator(superoperator(), Eigen::MatrixXcd(rho_dressed), t);
}

ThreeLevelGenerator build_three_level_generator(const ThermalSpectralDensity& tsd, double omega, double K) {
  return {omega, K, dressed_rates(tsd, omega, K)};
}

Eigen::Matrix3cd dressed_to_bare(const Eigen::Matrix3cd& rho_dressed) {
  const Eigen::Matrix3cd u = dressed_basis();
  return u * rho_dressed * u.adjoint();
}

Eigen::Matrix3cd bare_to_dressed(const Eigen::Matrix3cd& rho_bare) {
  const Eigen::Matrix3cd u = dressed_basis();
  return u.adjoint() * rho_bare * u;
}

}  // namespace zenolab
