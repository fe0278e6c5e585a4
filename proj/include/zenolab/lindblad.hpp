#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "zenolab/rates.hpp"
#include "zenolab/spectral.hpp"

namespace zenolab {

using cplx = std::complex<double>;

// 2x2 qubit state; index 0 is the upper level |up>.
class QubitDensityMatrix {
 public:
  // Throws InvalidState unless Hermitian and unit-trace to 1e-12 and
  // positive semidefinite to -1e-10.
  explicit QubitDensityMatrix(const Eigen::Matrix2cd& m);

  static QubitDensityMatrix up();
  static QubitDensityMatrix down();
  static QubitDensityMatrix maximally_mixed();
  // From a Bloch vector, |r| <= 1.
  static QubitDensityMatrix from_bloch(double x, double y, double z);

  const Eigen::Matrix2cd& matrix() const { return m_; }
  double p_up() const { return m_(0, 0).real(); }

 private:
  Eigen::Matrix2cd m_;
};

void validate_state(const Eigen::MatrixXcd& rho, double herm_tol = 1e-12, double trace_tol = 1e-12,
                    double eig_tol = -1e-10);

struct QubitGenerator {
  double omega = 0.0;
  double gamma0 = 0.0;      // dephasing, sigma_z channel
  double gamma_emit = 0.0;  // gamma_{+1}: up -> down
  double gamma_abs = 0.0;   // gamma_{-1}: down -> up
  double beta = kZeroTemperature;
  bool detailed_balance = false;

  double longitudinal_rate() const { return gamma_emit + gamma_abs; }
  double transverse_rate() const { return 2.0 * gamma0 + 0.5 * longitudinal_rate(); }
};

// Fills detailed_balance from the rates and beta.
QubitGenerator make_qubit_generator(double omega, double gamma0, double gamma_emit, double gamma_abs, double beta);

// Flip channel rates at +/-Omega and dephasing rate at 0, each taken from the
// strategy's controlled rate. Controlled dephasing under kicks and
// continuous coupling is experimental.
QubitGenerator build_qubit_generator(const ThermalSpectralDensity& tsd_flip, const ThermalSpectralDensity& tsd_dephase,
                                     double omega, const ControlStrategy& strategy);

// Closed-form Bloch solution.
QubitDensityMatrix evolve(const QubitDensityMatrix& rho0, const QubitGenerator& gen, double t);

// Throws NoRelaxation when gamma_emit + gamma_abs == 0.
QubitDensityMatrix stationary_state(const QubitGenerator& gen);

struct Observables {
  double p_up;
  std::array<double, 3> bloch;  // x = 2 Re rho01, y = -2 Im rho01, z = rho00 - rho11
  double purity;
  double coherence;  // |rho01|
};

Observables observables(const QubitDensityMatrix& rho);

// Column-stacked Lindblad superoperator for H and jump operators L_k (rates
// folded into L_k): vec(drho/dt) = S vec(rho).
Eigen::MatrixXcd lindblad_superoperator(const Eigen::MatrixXcd& H, const std::vector<Eigen::MatrixXcd>& jumps);

// Evolves rho by exp(S t).
Eigen::MatrixXcd evolve_superoperator(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& rho, double t);

// Qubit generator as Hamiltonian plus jumps, for the generic route.
Eigen::MatrixXcd qubit_superoperator(const QubitGenerator& gen);

// Dressed basis {|up>, |+>, |->}, |+-> = (|down> +- |M>)/sqrt(2),
// H' = diag(Omega/2, -Omega/2 + K, -Omega/2 - K).
struct ThreeLevelGenerator {
  double omega = 0.0;
  double K = 0.0;
  DressedRates rates{};

  Eigen::Matrix3cd hamiltonian() const;
  std::vector<Eigen::MatrixXcd> jumps() const;
  Eigen::MatrixXcd superoperator() const;
  // Total decay rate out of |up>, (gamma_+ + gamma_-)/2.
  double upper_level_rate() const { return 0.5 * (rates.gamma_plus + rates.gamma_minus); }

  Eigen::Matrix3cd evolve(const Eigen::Matrix3cd& rho_dressed, double t) const;
};

ThreeLevelGenerator build_three_level_generator(const ThermalSpectralDensity& tsd, double omega, double K);

// Basis change between the dressed basis and {|up>, |down>, |M>}.
Eigen::Matrix3cd dressed_to_bare(const Eigen::Matrix3cd& rho_dressed);
Eigen::Matrix3cd bare_to_dressed(const Eigen::Matrix3cd& rho_bare);

}  // namespace zenolab
