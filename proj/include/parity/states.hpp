#pragma once

// Constructors for the interferometer input states, all expressed in the Schwinger basis.

#include <cmath>
#include <numbers>
#include <string>

#include "parity/rotation.hpp"
#include "parity/state.hpp"

namespace parity {

namespace labels {
inline constexpr const char* kCoherent = "coherent";
inline constexpr const char* kSingleFock = "single-fock";
inline constexpr const char* kDualFock = "dual-fock";
inline constexpr const char* kNoon = "noon";
inline constexpr const char* kNoonInternal = "noon-internal";
inline constexpr const char* kYurke = "yurke";
inline constexpr const char* kYuen = "yuen";
inline constexpr const char* kModifiedYuen = "modified-yuen";
inline constexpr const char* kPezzeSmerzi = "pezze-smerzi";
inline constexpr const char* kBerryWiseman = "berry-wiseman";
inline constexpr const char* kCombined = "combined";
}  // namespace labels

inline constexpr double kDefaultTailBound = 1e-12;

/// Relative weights of the NOON-like and dual-Fock parts of the combined state.
/// theta is the relative phase theta_alpha - theta_beta.
struct CombinedStateParams {
  double alpha_mag = std::numbers::sqrt2 / 2;
  double beta_mag = std::numbers::sqrt2 / 2;
  double theta = 0.0;

  void validate() const {
    if (alpha_mag < 0.0 || alpha_mag > 1.0 || beta_mag < 0.0 || beta_mag > 1.0) {
      throw DomainError("combined-state magnitudes must lie in [0, 1]");
    }
    if (std::abs(alpha_mag * alpha_mag + beta_mag * beta_mag - 1.0) > 1e-12) {
      throw DomainError("combined-state magnitudes violate |alpha|^2 + |beta|^2 = 1");
    }
  }
};

namespace detail {

inline void require_positive(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + " must be positive, got " + std::to_string(n));
}

inline TwoModeState single_block(int two_j, Amplitudes amps, Frame frame, std::string label) {
  std::map<int, Amplitudes> c;
  c.emplace(two_j, std::move(amps));
  return TwoModeState(std::move(c), frame, std::move(label));
}

inline void set(Amplitudes& amps, HalfInt j, HalfInt mu, Complex value) {
  amps[static_cast<std::size_t>(projection_index(j, mu))] = value;
}

}  // namespace detail

/// Coherent state |alpha>_a |0>_b with |alpha|^2 = nbar, truncated at the smallest photon
/// number whose discarded Poisson tail is below tail_bound, then renormalized.
inline TwoModeState coherent_input(double nbar, double coherent_phase = 0.0,
                                   double tail_bound = kDefaultTailBound) {
  if (!(nbar >= 0.0)) throw DomainError("coherent state needs nbar >= 0");
  if (!(tail_bound > 0.0 && tail_bound <= 1e-6)) {
    throw DomainError("coherent tail bound must lie in (0, 1e-6]");
  }
  if (nbar == 0.0) {
    return detail::single_block(0, {Complex{1.0}}, Frame::AtInput, labels::kCoherent);
  }

  // Poisson weights p_n = exp(-nbar) nbar^n / n!, far enough out that the remainder is
  // negligible against any admissible tail bound.
  const int n_far = static_cast<int>(nbar + 40.0 * std::sqrt(nbar) + 60.0);
  std::vector<double> weights(static_cast<std::size_t>(n_far) + 1);
  for (int n = 0; n <= n_far; ++n) {
    weights[static_cast<std::size_t>(n)] = std::exp(-nbar + n * std::log(nbar) - log_factorial(n));
  }
  // tails[n] = sum_{m > n} p_m, accumulated from the far end.
  std::vector<double> tails(weights.size(), 0.0);
  CompensatedSum<double> acc;
  for (int n = n_far; n >= 0; --n) {
    tails[static_cast<std::size_t>(n)] = acc.value();
    acc += weights[static_cast<std::size_t>(n)];
  }
  int n_max = 0;
  while (n_max < n_far && tails[static_cast<std::size_t>(n_max)] >= tail_bound) ++n_max;
  const double tail = tails[static_cast<std::size_t>(n_max)];
  const double renorm = 1.0 / std::sqrt(1.0 - tail);

  std::map<int, Amplitudes> c;
  for (int n = 0; n <= n_max; ++n) {
    Amplitudes amps(static_cast<std::size_t>(n) + 1);
    // |j, j> sits at index 0.
    amps[0] = std::polar(std::sqrt(weights[static_cast<std::size_t>(n)]) * renorm, n * coherent_phase);
    c.emplace(n, std::move(amps));
  }
  return TwoModeState(std::move(c), Frame::AtInput, labels::kCoherent, tail);
}

/// |N>_a |0>_b.
inline TwoModeState single_fock_input(int n) {
  detail::require_positive(n, "photon number");
  Amplitudes amps(static_cast<std::size_t>(n) + 1);
  amps[0] = 1.0;
  return detail::single_block(n, std::move(amps), Frame::AtInput, labels::kSingleFock);
}

/// |N>_a |N>_b, i.e. |j = N, mu = 0>.
inline TwoModeState dual_fock_input(int n_per_mode) {
  detail::require_positive(n_per_mode, "photons per mode");
  const HalfInt j = HalfInt::from_int(n_per_mode);
  Amplitudes amps(static_cast<std::size_t>(j.twice()) + 1);
  detail::set(amps, j, HalfInt{}, 1.0);
  return detail::single_block(j.twice(), std::move(amps), Frame::AtInput, labels::kDualFock);
}

/// (|N,0> + |0,N>)/sqrt(2) in the internal modes.
inline TwoModeState noon_internal(int n) {
  detail::require_positive(n, "photon number");
  Amplitudes amps(static_cast<std::size_t>(n) + 1);
  amps.front() = std::numbers::sqrt2 / 2;
  amps.back() = std::numbers::sqrt2 / 2;
  return detail::single_block(n, std::move(amps), Frame::InsideInterferometer, labels::kNoonInternal);
}

/// The input state that becomes a NOON state after the first beam splitter:
/// exp(-i pi/2 J_x) applied to noon_internal(N).
inline TwoModeState noon_input(int n) {
  const TwoModeState internal = noon_internal(n);
  const HalfInt j = HalfInt::from_twice(n);
  Amplitudes amps = beam_splitter_block(j, internal.components().begin()->second, false);
  return detail::single_block(n, std::move(amps), Frame::AtInput, labels::kNoon);
}

/// (|N/2, N/2> + |N/2+1, N/2-1>)/sqrt(2): mu = 0 and mu = 1 with j = N/2.
inline TwoModeState yurke_input(int n) {
  detail::require_positive(n, "photon number");
  if (n % 2 != 0) throw DomainError("Yurke state needs even N, got " + std::to_string(n));
  const HalfInt j = HalfInt::from_twice(n);
  Amplitudes amps(static_cast<std::size_t>(n) + 1);
  detail::set(amps, j, HalfInt::from_int(0), std::numbers::sqrt2 / 2);
  detail::set(amps, j, HalfInt::from_int(1), std::numbers::sqrt2 / 2);
  return detail::single_block(n, std::move(amps), Frame::AtInput, labels::kYurke);
}

/// Yuen state (mu = +1/2 and mu = -1/2 with relative phase i), or the modified version
/// with zero relative phase.
inline TwoModeState yuen_input(int n, bool modified) {
  detail::require_positive(n, "photon number");
  if (n % 2 != 1) throw DomainError("Yuen state needs odd N, got " + std::to_string(n));
  const HalfInt j = HalfInt::from_twice(n);
  const HalfInt half = HalfInt::from_twice(1);
  const double r = std::numbers::sqrt2 / 2;
  Amplitudes amps(static_cast<std::size_t>(n) + 1);
  detail::set(amps, j, half, r);
  detail::set(amps, j, -half, modified ? Complex{r} : Complex{0.0, r});
  return detail::single_block(n, std::move(amps), Frame::AtInput,
                              modified ? labels::kModifiedYuen : labels::kYuen);
}

/// (|j, 1> + |j, -1>)/sqrt(2) with j = N/2.
inline TwoModeState pezze_smerzi_input(int n) {
  detail::require_positive(n, "photon number");
  if (n % 2 != 0) throw DomainError("Pezze-Smerzi state needs even N, got " + std::to_string(n));
  const HalfInt j = HalfInt::from_twice(n);
  Amplitudes amps(static_cast<std::size_t>(n) + 1);
  detail::set(amps, j, HalfInt::from_int(1), std::numbers::sqrt2 / 2);
  detail::set(amps, j, HalfInt::from_int(-1), std::numbers::sqrt2 / 2);
  return detail::single_block(n, std::move(amps), Frame::AtInput, labels::kPezzeSmerzi);
}

/// Optimal phase-estimation state C_mu = sin((mu + j + 1) pi / (2j + 2)) / sqrt(j + 1),
/// defined inside the interferometer.
inline TwoModeState berry_wiseman_internal(int n) {
  detail::require_positive(n, "photon number");
  const HalfInt j = HalfInt::from_twice(n);
  const double jj = j.value();
  Amplitudes amps(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double mu = projection_at(j, i).value();
    amps[static_cast<std::size_t>(i)] =
        std::sin((mu + jj + 1.0) * std::numbers::pi / (2.0 * jj + 2.0)) / std::sqrt(jj + 1.0);
  }
  return detail::single_block(n, std::move(amps), Frame::InsideInterferometer, labels::kBerryWiseman);
}

/// Normalization of alpha |psi>_NOON-input + beta |j, 0>: the closed form
/// C_N = [1 + 2 sqrt(2) |alpha||beta| d^j_{j,0}(pi/2) cos(theta - N pi/4)]^{-1/2}
/// next to the value obtained from the explicit state vector.
struct NormalizationReport {
  double closed_form = 0.0;
  double numeric = 0.0;
  double discrepancy = 0.0;
  bool flagged = false;  // discrepancy above 1e-8
};

namespace detail {

inline void require_combined(int n, const CombinedStateParams& params) {
  require_positive(n, "photon number");
  if (n % 2 != 0) throw DomainError("combined state needs even N, got " + std::to_string(n));
  params.validate();
}

inline Amplitudes combined_unnormalized(int n, const CombinedStateParams& params) {
  const HalfInt j = HalfInt::from_twice(n);
  Amplitudes amps = noon_input(n).components().begin()->second;
  const Complex alpha = std::polar(params.alpha_mag, params.theta);
  for (auto& a : amps) a *= alpha;
  amps[static_cast<std::size_t>(projection_index(j, HalfInt{}))] += params.beta_mag;
  return amps;
}

inline double norm_of(const Amplitudes& amps) {
  CompensatedSum<double> acc;
  for (const auto& a : amps) acc += std::norm(a);
  return std::sqrt(acc.value());
}

}  // namespace detail

inline NormalizationReport combined_normalization(int n, const CombinedStateParams& params) {
  detail::require_combined(n, params);
  const HalfInt j = HalfInt::from_twice(n);
  const double bracket = 1.0 + 2.0 * std::numbers::sqrt2 * params.alpha_mag * params.beta_mag *
                                   d_element(j, j, HalfInt{}, 0.5 * std::numbers::pi) *
                                   std::cos(params.theta - n * std::numbers::pi / 4.0);
  NormalizationReport report;
  report.closed_form = 1.0 / std::sqrt(bracket);
  report.numeric = 1.0 / detail::norm_of(detail::combined_unnormalized(n, params));
  report.discrepancy = std::abs(report.closed_form - report.numeric);
  report.flagged = !(report.discrepancy <= 1e-8);
  return report;
}

/// C_N (alpha |psi>_NOON-input + beta |j, 0>) with alpha = |alpha| e^{i theta}, beta = |beta|.
/// Normalized numerically; see combined_normalization() for the closed-form comparison.
inline TwoModeState combined_input(int n, const CombinedStateParams& params) {
  detail::require_combined(n, params);
  Amplitudes amps = detail::combined_unnormalized(n, params);
  const double scale = 1.0 / detail::norm_of(amps);
  for (auto& a : amps) a *= scale;
  return detail::single_block(n, std::move(amps), Frame::AtInput, labels::kCombined);
}

}  // namespace parity
