#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "zenolab/spectral.hpp"

namespace zenolab {

enum class BathScheme { Linear, GaussLegendre };

struct DiscretizedBath {
  std::vector<double> omega;     // strictly increasing, inside [0, omega_max]
  std::vector<double> coupling;  // g_i = sqrt(kappa(omega_i) w_i)
  std::vector<double> weight;
  double omega_max = 0.0;
  BathScheme scheme = BathScheme::Linear;

  std::size_t size() const { return omega.size(); }
  double coupling_sum() const;  // sum g_i^2
  // 2 pi / (largest gap between neighbouring modes): earliest revival.
  double recurrence_time() const;
};

// Throws InsufficientModes if the recurrence time is shorter than min_span.
DiscretizedBath build_bath(const FormFactor& ff, double omega_max, int M, BathScheme scheme = BathScheme::Linear,
                           double min_span = 0.0);

// Single-excitation sector at zero temperature.
//   FreeOrZeno:  {|up,vac>, |down,1_i>}                 dim M + 1
//   WithAncilla: {|up,vac>, |down,1_i>, |M,1_i>}        dim 2M + 1
// with K coupling |down,1_i> <-> |M,1_i>.
class SingleExcitationModel {
 public:
  enum class Variant { FreeOrZeno, WithAncilla };

  static SingleExcitationModel free_model(const DiscretizedBath& bath, double omega);
  static SingleExcitationModel ancilla_model(const DiscretizedBath& bath, double omega, double K);

  Variant variant() const { return variant_; }
  double omega() const { return omega_; }
  double K() const { return K_; }
  const Eigen::MatrixXd& hamiltonian() const { return H_; }
  const DiscretizedBath& bath() const { return bath_; }
  Eigen::Index dim() const { return H_.rows(); }

  // <up,vac| exp(-iHt) |up,vac>.
  std::complex<double> survival_amplitude(double t) const;
  // Full state exp(-iHt)|up,vac>.
  Eigen::VectorXcd state(double t) const;
  // exp(-iHt) as a dense matrix.
  Eigen::MatrixXcd propagator(double t) const;

 private:
  SingleExcitationModel(const DiscretizedBath& bath, double omega, double K, Variant v);

  DiscretizedBath bath_;
  double omega_;
  double K_;
  Variant variant_;
  Eigen::MatrixXd H_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd weights_;  // |<up,vac|k>|^2
};

// |<up,vac| exp(-iHt) |up,vac>|^2. Throws RecurrenceWindowExceeded past the
// bath recurrence time.
double free_survival(const SingleExcitationModel& model, double t);

// N measurement cycles conditioned on finding |up> each time: P_1(tau)^N.
double zeno_survival(const SingleExcitationModel& model, double tau, int N);
double zeno_effective_rate(const SingleExcitationModel& model, double tau);

// Survival after N free intervals of length tau, each followed by the kick
// +1 on |up>, -1 on the |down>/|M> blocks. N must be even.
double kick_survival(const SingleExcitationModel& model, double tau, int N);
// P after every cycle 0..N, and the total probability (unitarity check).
struct KickTrace {
  std::vector<double> t;
  std::vector<double> survival;
  std::vector<double> norm;
};
KickTrace kick_trace(const SingleExcitationModel& model, double tau, int N);

double continuous_survival(const SingleExcitationModel& model, double t);

struct DecayFit {
  double rate = 0.0;
  double intercept = 0.0;
  std::pair<double, double> fit_window{0.0, 0.0};
  double residual = 0.0;  // RMS residual of -ln P about the line
  std::size_t samples = 0;
};

// Least-squares line through -ln P vs t. Needs >= 10 samples, all P > 0.
DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& samples);

// Fitted decay rate of free_survival / continuous_survival over
// [lo_frac, hi_frac] of the recurrence time.
DecayFit fit_survival(const SingleExcitationModel& model, double lo_frac = 0.3, double hi_frac = 0.8, int samples = 200);

// Fit over the even cycles of the second half of a kick sequence.
DecayFit fit_kick(const SingleExcitationModel& model, double tau, int N);

}  // namespace zenolab
