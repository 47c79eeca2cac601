#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nanomass/constants.hpp"
#include "nanomass/noise.hpp"
#include "nanomass/params.hpp"

using namespace nanomass;
using constants::hbar;
using constants::k_B;
using constants::two_pi;

namespace {

constexpr double omega_ghz = two_pi * 1e9;

FreeSensorParams reference_free() { return validate_free_params({1e-19, omega_ghz, 1e7, 1e3, 1.6e-15}); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(BoseOccupation, ZeroTemperatureIsExactlyZero) {
  EXPECT_EQ(bose_occupation(omega_ghz, 0.0), 0.0);
  EXPECT_EQ(bose_occupation(1e15, 0.0), 0.0);
}

TEST(BoseOccupation, At25Kelvin) {
  // Arbitrary-precision evaluation of 1/(exp(hbar w0 / kB T) - 1).
  EXPECT_LT(rel(bose_occupation(omega_ghz, 25.0), 520.4156383771234), 1e-12);
  // High-temperature expansion kB T / hbar w0 - 1/2 as an independent check.
  EXPECT_LT(rel(bose_occupation(omega_ghz, 25.0), k_B * 25.0 / (hbar * omega_ghz) - 0.5), 1e-6);
}

TEST(BoseOccupation, HighTemperatureSeries) {
  const double T = 100.0 * hbar * omega_ghz / k_B;
  EXPECT_LT(rel(bose_occupation(omega_ghz, T), 100.0 - 0.5), 1e-3);
}

TEST(BoseOccupation, NegativeTemperatureRejected) {
  try {
    bose_occupation(omega_ghz, -1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::negative_temperature);
  }
  EXPECT_THROW(noise_energy(omega_ghz, -1.0), Error);
}

TEST(BoseOccupation, ConvexIncreasingInTemperature) {
  const double h = 0.05;
  for (double T = h; T < 5.0; T += h) {
    const double lo = bose_occupation(omega_ghz, T - h);
    const double mid = bose_occupation(omega_ghz, T);
    const double hi = bose_occupation(omega_ghz, T + h);
    EXPECT_GT(mid, lo);
    EXPECT_GE(hi - 2.0 * mid + lo, -1e-12 * mid) << "T = " << T;
  }
}

TEST(NoiseEnergy, ZeroPoint) {
  const auto th = noise_energy(omega_ghz, 0.0);
  EXPECT_EQ(th.n_bar, 0.0);
  EXPECT_EQ(th.E_noise, hbar * omega_ghz / 2.0);
  EXPECT_LT(rel(th.E_noise, 3.313035072970040e-25), 1e-12);
}

TEST(NoiseEnergy, ClassicalLimitAt25Kelvin) {
  EXPECT_LT(rel(noise_energy(omega_ghz, 25.0).E_noise, k_B * 25.0), 1e-3);
}

TEST(NoiseEnergy, OnePhonon) {
  const double T = hbar * omega_ghz / (k_B * std::log(2.0));
  const auto th = noise_energy(omega_ghz, T);
  EXPECT_NEAR(th.n_bar, 1.0, 1e-12);
  EXPECT_LT(rel(th.E_noise, 1.5 * hbar * omega_ghz), 1e-12);
}

TEST(NoiseEnergy, MonotoneAndAboveZeroPoint) {
  double prev = 0.0;
  for (double T = 0.0; T <= 30.0; T += 0.25) {
    const auto th = noise_energy(omega_ghz, T);
    EXPECT_GE(th.E_noise, hbar * omega_ghz / 2.0);
    EXPECT_EQ(th.E_noise, hbar * omega_ghz * (th.n_bar + 0.5));
    if (T > 0.0) {
      EXPECT_GT(th.E_noise, prev);
    }
    prev = th.E_noise;
  }
}

TEST(DisplacementPsd, ResonanceValue) {
  const auto p = reference_free();
  const double E = 1e-24;
  EXPECT_LT(rel(displacement_psd(p.omega0, p, E), 2.0 * p.q_factor * E / (p.mass * std::pow(p.omega0, 3))), 1e-12);
}

TEST(DisplacementPsd, ZeroFrequency) {
  const auto p = reference_free();
  const double E = 1e-24;
  EXPECT_LT(rel(displacement_psd(0.0, p, E), 2.0 * E / (p.mass * p.q_factor * std::pow(p.omega0, 3))), 1e-12);
}

TEST(DisplacementPsd, DecaysAboveResonance) {
  const auto p = reference_free();
  double prev = displacement_psd(p.omega0, p, 1.0);
  for (double w = p.omega0 * 1.0001; w < 1e3 * p.omega0; w *= 1.5) {
    const double s = displacement_psd(w, p, 1.0);
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(FrequencyNoiseIntegrand, ResonanceValue) {
  const auto p = reference_free();
  EXPECT_LT(rel(frequency_noise_integrand(p.omega0, p, 2e-10), p.omega0 * 2e-10 / p.q_factor), 1e-12);
}

TEST(FrequencyNoiseIntegrand, ZeroNoise) {
  const auto p = reference_free();
  for (double w : {0.5 * p.omega0, p.omega0, 2.0 * p.omega0}) EXPECT_EQ(frequency_noise_integrand(w, p, 0.0), 0.0);
}

// S_q -> S_phi -> S_omega through the drive amplitude, versus the direct integrand.
TEST(FrequencyNoiseIntegrand, ChainIdentity) {
  auto p = reference_free();
  p.q_factor = 1e4;
  const double E_noise = 3e-25;
  const double E_ratio = E_noise / p.drive_energy;
  const double qd2 = drive_amplitude_sq(p);
  EXPECT_LT(rel(qd2, 2.0 * p.drive_energy / (p.mass * p.omega0 * p.omega0)), 1e-15);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    const double w = p.omega0 * u(rng);
    const double via_chain = frequency_noise_psd(phase_noise_psd(displacement_psd(w, p, E_noise), qd2), p);
    EXPECT_LT(rel(via_chain, frequency_noise_integrand(w, p, E_ratio)), 1e-12) << "omega/omega0 = " << w / p.omega0;
  }
}

TEST(BandFrequencyNoise, QuadratureMatchesArbitraryPrecision) {
  const auto p = reference_free();
  const double E_ratio = hbar * p.omega0 / 2.0 / p.drive_energy;
  // sqrt of the band integral, evaluated with 40-digit adaptive quadrature.
  EXPECT_LT(rel(band_frequency_noise(p, E_ratio, BandIntegralMethod::quadrature), 0.01096624833564854), 1e-9);
}

TEST(BandFrequencyNoise, LorentzianAgreesWithQuadratureAtHighQ) {
  const auto p = reference_free();
  const double E_ratio = hbar * p.omega0 / 2.0 / p.drive_energy;
  const double quad = band_frequency_noise(p, E_ratio, BandIntegralMethod::quadrature);
  const double lor = band_frequency_noise(p, E_ratio, BandIntegralMethod::lorentzian_closed_form);
  EXPECT_LT(rel(lor, quad), 0.01);
  // The band integral itself (before the square root) also matches.
  EXPECT_LT(rel(lor * lor, band_noise_integral(p, E_ratio).value), 0.01);
}

TEST(BandFrequencyNoise, NarrowBandMatchesLorentzianAtQ1e5) {
  auto raw = reference_free();
  raw.q_factor = 1e5;
  const auto p = validate_free_params(raw);
  const double E_ratio = 2e-10;
  const double nb = band_frequency_noise(p, E_ratio, BandIntegralMethod::narrow_band);
  const double lor = band_frequency_noise(p, E_ratio, BandIntegralMethod::lorentzian_closed_form);
  EXPECT_LT(rel(nb, lor), 0.02);
}

TEST(BandFrequencyNoise, ZeroNoiseAllMethods) {
  const auto p = reference_free();
  for (auto m : {BandIntegralMethod::quadrature, BandIntegralMethod::lorentzian_closed_form,
                 BandIntegralMethod::narrow_band})
    EXPECT_EQ(band_frequency_noise(p, 0.0, m), 0.0);
}

TEST(BandFrequencyNoise, BandExceedsDomain) {
  auto raw = reference_free();
  raw.bandwidth = raw.omega0 / constants::pi;
  const auto p = validate_free_params(raw);
  try {
    band_frequency_noise(p, 1e-10, BandIntegralMethod::lorentzian_closed_form);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::band_exceeds_domain);
  }
}

TEST(BandFrequencyNoise, LorentzianErrorBoundedByTenOverQ) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    FreeSensorParams raw;
    raw.mass = 1e-18;
    raw.omega0 = std::pow(10.0, 6.0 + 4.0 * u(rng));
    raw.q_factor = std::pow(10.0, 4.0 + 4.0 * u(rng));
    // 2 pi df between 1e-4 omega0/Q and omega0.
    const double two_pi_df = raw.omega0 * std::pow(10.0, std::log10(1e-4 / raw.q_factor) * u(rng));
    raw.bandwidth = two_pi_df / two_pi;
    raw.drive_energy = 1e-15;
    const auto p = validate_free_params(raw);
    const double E_ratio = 1e-9;
    const double quad = band_frequency_noise(p, E_ratio, BandIntegralMethod::quadrature);
    const double lor = band_frequency_noise(p, E_ratio, BandIntegralMethod::lorentzian_closed_form);
    EXPECT_LE(rel(lor, quad), 10.0 / p.q_factor)
        << "Q=" << p.q_factor << " 2pi df/omega0=" << two_pi_df / p.omega0;
  }
}

TEST(BandFrequencyNoise, MonotoneInNoiseAndBandwidth) {
  auto raw = reference_free();
  for (auto m : {BandIntegralMethod::quadrature, BandIntegralMethod::lorentzian_closed_form,
                 BandIntegralMethod::narrow_band}) {
    double prev = -1.0;
    for (double e = 0.0; e < 1e-8; e += 1e-9) {
      const double v = band_frequency_noise(reference_free(), e, m);
      EXPECT_GE(v, prev);
      prev = v;
    }
    prev = -1.0;
    for (double df = 1.0; df < 1e8; df *= 3.0) {
      raw.bandwidth = df;
      const double v = band_frequency_noise(validate_free_params(raw), 1e-9, m);
      EXPECT_GE(v, prev) << "df=" << df;
      prev = v;
    }
  }
}

TEST(BandFrequencyNoise, ArctanSaturation) {
  auto raw = reference_free();
  const double E_ratio = 1e-9;
  const double limit = raw.omega0 / raw.q_factor * std::sqrt(E_ratio * constants::pi / 2.0);
  double prev = 0.0;
  for (double df = 1e1; df < raw.omega0 / constants::pi; df *= 10.0) {
    raw.bandwidth = df;
    const double v = band_frequency_noise(validate_free_params(raw), E_ratio, BandIntegralMethod::lorentzian_closed_form);
    EXPECT_LT(v, limit);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_LT(rel(prev, limit), 1e-6);
}
