#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "nanomass/constants.hpp"
#include "nanomass/detail/parallel.hpp"
#include "nanomass/error.hpp"
#include "nanomass/free_sensor.hpp"
#include "nanomass/noise.hpp"
#include "nanomass/numerics/linalg.hpp"
#include "nanomass/numerics/polynomial.hpp"
#include "nanomass/params.hpp"

namespace nanomass {

using Matrix4 = numerics::Matrix<4>;

/// Time-averaged semiclassical fixed point of the driven cavity. The field
/// phase is chosen so that alpha is real.
struct SteadyState {
  double alpha = 0.0;              // intracavity amplitude
  double q_tilde = 0.0;            // dimensionless mirror displacement g alpha^2 / omega0
  double effective_detuning = 0.0; // Delta = delta - g q_tilde, rad/s
  double bare_detuning = 0.0;      // delta, rad/s
  double photon_number = 0.0;      // alpha^2
  int branch_count = 1;            // real fixed points at this bare detuning (1 or 3)
};

/// Raised in bare-detuning mode when three fixed points coexist.
class BistableError : public Error {
 public:
  BistableError(std::vector<double> photon_numbers)
      : Error(ErrorKind::bistable_regime, "bistable regime: three coexisting fixed points", "detuning"),
        photon_numbers_(std::move(photon_numbers)) {}
  const std::vector<double>& photon_numbers() const noexcept { return photon_numbers_; }

 private:
  std::vector<double> photon_numbers_;
};

/// Fluctuation dynamics over (dq, dp, dX, dY).
struct DriftMatrix {
  Matrix4 a;
  double coupling = 0.0;            // G = sqrt(2) g alpha
  double effective_detuning = 0.0;  // Delta
};

struct StabilityReport {
  bool stable = false;
  numerics::HurwitzResult hurwitz;
  std::array<double, 5> characteristic{};  // det(sI - A), highest degree first
};

struct CorrelationMatrix {
  Matrix4 c;
  double q_variance = 0.0;       // <q~^2> = C11
  double relative_residual = 0.0; // |AC + CA^T + D| / |D|
};

struct CavityMassResult {
  MassSensitivityResult sensitivity;
  SteadyState steady_state;
  DriftMatrix drift;
  CorrelationMatrix correlations;
};

/// Cubic in the photon number n obtained from n [(gamma/2)^2 + (delta - kappa n)^2] = gamma |alpha_in|^2
/// with kappa = g^2 / omega0.
inline numerics::PolynomialReal steady_state_cubic(const CavityParams& p, const CavityDerived& d,
                                                   double bare_detuning) {
  const double kappa = d.coupling * d.coupling / p.base.omega0;
  const double half = 0.5 * d.linewidth;
  return numerics::PolynomialReal({kappa * kappa, -2.0 * bare_detuning * kappa,
                                   half * half + bare_detuning * bare_detuning, -d.linewidth * d.input_flux});
}

inline SteadyState solve_steady_state(const CavityParams& p) {
  const CavityDerived d = derive_cavity_quantities(p);
  const double w0 = p.base.omega0;
  const double half = 0.5 * d.linewidth;
  SteadyState ss;

  if (p.detuning_mode == DetuningMode::effective) {
    ss.effective_detuning = p.detuning;
    ss.photon_number = d.linewidth * d.input_flux / (half * half + p.detuning * p.detuning);
    ss.q_tilde = d.coupling * ss.photon_number / w0;
    ss.bare_detuning = p.detuning + d.coupling * ss.q_tilde;
    ss.alpha = std::sqrt(ss.photon_number);
    ss.branch_count = static_cast<int>(numerics::cubic_real_roots(steady_state_cubic(p, d, ss.bare_detuning)).size());
    return ss;
  }

  std::vector<double> physical;
  for (double n : numerics::cubic_real_roots(steady_state_cubic(p, d, p.detuning)))
    if (n >= 0.0) physical.push_back(n);
  if (physical.empty()) throw Error(ErrorKind::no_physical_root, "no non-negative intracavity photon number");
  if (physical.size() == 3) throw BistableError(physical);

  ss.photon_number = physical.front();
  ss.alpha = std::sqrt(ss.photon_number);
  ss.q_tilde = d.coupling * ss.photon_number / w0;
  ss.bare_detuning = p.detuning;
  ss.effective_detuning = p.detuning - d.coupling * ss.q_tilde;
  ss.branch_count = 1;
  return ss;
}

/// Circulating power n hbar omega_l c / (2L).
inline double intracavity_power(const CavityParams& p, const SteadyState& ss) {
  const CavityDerived d = derive_cavity_quantities(p);
  return ss.photon_number * constants::hbar * d.omega_laser * constants::c / (2.0 * p.cavity_length);
}

inline DriftMatrix build_drift_matrix(const CavityParams& p, const SteadyState& ss) {
  const CavityDerived d = derive_cavity_quantities(p);
  const double w0 = p.base.omega0;
  const double G = std::sqrt(2.0) * d.coupling * ss.alpha;
  const double delta = ss.effective_detuning;
  const double k = 0.5 * d.linewidth;

  DriftMatrix dm;
  dm.coupling = G;
  dm.effective_detuning = delta;
  auto& a = dm.a;
  a(0, 1) = w0;
  a(1, 0) = -w0;
  a(1, 1) = -p.base.mechanical_damping;
  a(1, 2) = G;
  a(2, 2) = -k;
  a(2, 3) = delta;
  a(3, 0) = G;
  a(3, 2) = -delta;
  a(3, 3) = -k;
  return dm;
}

inline StabilityReport stability_check(const DriftMatrix& drift) {
  StabilityReport r;
  r.characteristic = numerics::characteristic_polynomial(drift.a);
  r.hurwitz = numerics::routh_hurwitz_quartic(r.characteristic);
  r.stable = r.hurwitz.stable;
  return r;
}

/// Diffusion matrix diag[0, gamma_c (2n + 1), gamma/2, gamma/2].
inline Matrix4 diffusion_matrix(double n_bar, double mechanical_damping, double linewidth) {
  return Matrix4::diagonal({0.0, mechanical_damping * (2.0 * n_bar + 1.0), 0.5 * linewidth, 0.5 * linewidth});
}

/// Steady-state symmetrized covariance from A C + C A^T = -D, solved as a
/// dense 16x16 system in vec(C).
inline CorrelationMatrix solve_lyapunov(const DriftMatrix& drift, double n_bar, double mechanical_damping,
                                        double linewidth) {
  if (!stability_check(drift).stable)
    throw Error(ErrorKind::unstable_drift_matrix, "drift matrix fails the Routh-Hurwitz criterion");

  const Matrix4& a = drift.a;
  const Matrix4 dmat = diffusion_matrix(n_bar, mechanical_damping, linewidth);
  numerics::Matrix<16> k;
  numerics::Vector<16> rhs{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const std::size_t row = 4 * i + j;
      for (std::size_t m = 0; m < 4; ++m) {
        k(row, 4 * m + j) += a(i, m);
        k(row, 4 * i + m) += a(j, m);
      }
      rhs[row] = -dmat(i, j);
    }

  const auto x = numerics::linear_solve_dense(k, rhs);
  CorrelationMatrix out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out.c(i, j) = 0.5 * (x[4 * i + j] + x[4 * j + i]);
  out.q_variance = out.c(0, 0);

  const Matrix4 residual = a * out.c + out.c * a.transposed() + dmat;
  out.relative_residual = numerics::frobenius_norm(residual) / numerics::frobenius_norm(dmat);
  if (!(out.relative_residual <= 1e-10))
    throw Error(ErrorKind::singular_system,
                "Lyapunov residual " + std::to_string(out.relative_residual) + " exceeds 1e-10");
  return out;
}

/// Cavity-limited minimum detectable mass: the mirror's noise energy is
/// hbar omega0 <q~^2>, fed through the same band integral and responsivity
/// as the free cantilever.
inline CavityMassResult cavity_min_mass(const CavityParams& p, double temperature,
                                        BandIntegralMethod method = BandIntegralMethod::lorentzian_closed_form) {
  const CavityDerived d = derive_cavity_quantities(p);
  const double n_bar = bose_occupation(p.base.omega0, temperature);

  CavityMassResult r;
  r.steady_state = solve_steady_state(p);
  r.drift = build_drift_matrix(p, r.steady_state);
  r.correlations = solve_lyapunov(r.drift, n_bar, p.base.mechanical_damping, d.linewidth);
  const double E_noise = constants::hbar * p.base.omega0 * r.correlations.q_variance;
  r.sensitivity = detail::mass_from_noise_energy(p.base, n_bar, E_noise, method);
  return r;
}

inline std::vector<CavityMassResult> cavity_sweep_temperature(
    const CavityParams& p, std::span<const double> temperatures,
    BandIntegralMethod method = BandIntegralMethod::lorentzian_closed_form, unsigned jobs = 1) {
  if (temperatures.empty()) throw Error(ErrorKind::validation_error, "temperature grid is empty", "grid");
  std::vector<CavityMassResult> out(temperatures.size());
  nanomass::detail::parallel_for(temperatures.size(), jobs,
                                 [&](std::size_t i) { out[i] = cavity_min_mass(p, temperatures[i], method); });
  return out;
}

}  // namespace nanomass
