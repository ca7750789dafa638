#pragma once

// Parity expectation, its phase derivative, the error-propagation phase uncertainty
// delta_phi = sqrt(1 - <P>^2) / |d<P>/dphi| and its small-phase limit.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "parity/interferometer.hpp"
#include "parity/states.hpp"
#include "parity/wigner.hpp"

namespace parity {

struct DetectionResult {
  double phi = 0.0;
  double expectation = 0.0;
  double derivative = 0.0;
  double variance = 0.0;
  double delta_phi = 0.0;
};

struct BenchmarkLimits {
  int n = 0;
  double shot_noise = 0.0;
  double heisenberg = 0.0;
  double bw_povm = 0.0;
};

inline BenchmarkLimits benchmark_limits(int n) {
  detail::require_positive(n, "photon number");
  return {n, 1.0 / std::sqrt(static_cast<double>(n)), 1.0 / n,
          std::tan(std::numbers::pi / (n + 2.0))};
}

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kImagTolerance = 1e-10;
inline constexpr double kFlatDerivative = 1e-14;

namespace detail {

// Everything the detection layer needs at one phase. p_plus / p_minus are the weights of the
// +1 and -1 eigenspaces of the measured parity; they give 1 - <P>^2 = 4 p_plus p_minus without
// the cancellation of forming 1 - <P>^2 directly when <P> is close to +-1.
struct ParityMoments {
  Complex expectation;
  double derivative = 0.0;
  double p_plus = 0.0;
  double p_minus = 0.0;
};

inline void require_normalized(const TwoModeState& state) {
  const double n2 = state.norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg << "state '" << state.label() << "' is not normalized: |psi|^2 = " << n2;
    throw DomainError(msg.str());
  }
}

inline std::vector<int> nonzero_indices(const Amplitudes& amps) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] != Complex{}) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

// Few nonzero amplitudes: evaluate single elements. Otherwise a full block is cheaper.
inline constexpr std::size_t kSparseLimit = 4;

// Output-parity moments of one at-input block after exp(-i phi J_y).
inline void at_input_block(HalfInt j, const Amplitudes& psi, double phi, ParityMoments& m,
                           CompensatedSum<Complex>& e_acc, CompensatedSum<double>& d_acc) {
  const int n = j.twice() + 1;
  const std::vector<int> support = nonzero_indices(psi);
  const bool sparse = support.size() <= kSparseLimit;

  // <P> = sum (-1)^{j-mu'} psi*_{mu'} psi_mu d_{mu'mu}(2 phi), and its phi-derivative.
  std::optional<WignerBlock> twice;
  if (!sparse) twice = d_block(j, 2.0 * phi);
  const double jj = j.value();
  for (int r : support) {
    const HalfInt mp = projection_at(j, r);
    const double sign = sign_power(integral(j - mp));
    for (int c : support) {
      const HalfInt mu = projection_at(j, c);
      const Complex w = sign * std::conj(psi[static_cast<std::size_t>(r)]) * psi[static_cast<std::size_t>(c)];
      double value = 0.0;
      double slope = 0.0;
      if (sparse) {
        value = d_element(j, mp, mu, 2.0 * phi);
        slope = d_derivative(j, mp, mu, 2.0 * phi);
      } else {
        const WignerBlock& b = *twice;
        const double m = mp.value();
        value = b(r, c);
        const double up = r > 0 ? std::sqrt((jj - m) * (jj + m + 1.0)) * b(r - 1, c) : 0.0;
        const double down = r + 1 < n ? std::sqrt((jj + m) * (jj - m + 1.0)) * b(r + 1, c) : 0.0;
        slope = 0.5 * (up - down);
      }
      e_acc += w * value;
      d_acc += 2.0 * (w * slope).real();
    }
  }

  // Eigenspace weights from the rotated amplitudes.
  std::optional<WignerBlock> once;
  if (!sparse) once = d_block(j, phi);
  CompensatedSum<double> even, odd;
  for (int r = 0; r < n; ++r) {
    const HalfInt nu = projection_at(j, r);
    CompensatedSum<Complex> amp;
    for (int c : support) {
      const double d = sparse ? d_element(j, nu, projection_at(j, c), phi) : (*once)(r, c);
      amp += d * psi[static_cast<std::size_t>(c)];
    }
    (integral(j - nu) % 2 == 0 ? even : odd) += std::norm(amp.value());
  }
  m.p_plus += even.value();
  m.p_minus += odd.value();
}

// Internal-parity moments of one inside-interferometer block after the phase shifter.
// <Q> = sum_mu (-1)^{2mu} psi*_{-mu} psi_mu exp(-2 i mu phi).
inline void inside_block(HalfInt j, const Amplitudes& psi, double phi, ParityMoments& m,
                         CompensatedSum<Complex>& e_acc, CompensatedSum<double>& d_acc) {
  const int n = j.twice() + 1;
  const double sign = sign_power(j.twice());  // (-1)^{2mu} is the same for every mu in the block
  CompensatedSum<double> plus, minus;
  for (int r = 0; r < n; ++r) {
    const double mu = projection_at(j, r).value();
    const Complex a = psi[static_cast<std::size_t>(r)];
    const Complex b = psi[static_cast<std::size_t>(n - 1 - r)];
    const Complex term = sign * std::conj(b) * a * std::polar(1.0, -2.0 * mu * phi);
    e_acc += term;
    d_acc += (Complex{0.0, -2.0 * mu} * term).real();
    if (2 * r + 1 == n) {
      // mu = 0 is a +1 eigenvector.
      plus += std::norm(a);
    } else if (2 * r + 1 < n) {
      // Pair (mu, -mu): eigenvectors (|mu> + c|-mu>)/sqrt(2) with eigenvalue c (-1)^{2mu}.
      const Complex pa = a * std::polar(1.0, -mu * phi);
      const Complex pb = b * std::polar(1.0, mu * phi);
      const double sym = 0.5 * std::norm(pa + pb);
      const double anti = 0.5 * std::norm(pa - pb);
      plus += sign > 0 ? sym : anti;
      minus += sign > 0 ? anti : sym;
    }
  }
  m.p_plus += plus.value();
  m.p_minus += minus.value();
}

inline ParityMoments parity_moments(const TwoModeState& state, double phi) {
  require_normalized(state);
  ParityMoments m;
  CompensatedSum<Complex> e_acc;
  CompensatedSum<double> d_acc;
  for (const auto& [two_j, amps] : state.components()) {
    const HalfInt j = HalfInt::from_twice(two_j);
    if (state.frame() == Frame::AtInput) {
      at_input_block(j, amps, phi, m, e_acc, d_acc);
    } else {
      inside_block(j, amps, phi, m, e_acc, d_acc);
    }
  }
  m.expectation = e_acc.value();
  m.derivative = d_acc.value();
  if (!(std::abs(m.expectation.imag()) < kImagTolerance)) {
    std::ostringstream msg;
    msg << "parity expectation of '" << state.label() << "' at phi = " << phi
        << " has imaginary residue " << m.expectation.imag();
    throw ConsistencyError(msg.str());
  }
  return m;
}

}  // namespace detail

/// <P> after the interferometer at phase phi. At-input states are rotated by exp(-i phi J_y)
/// and measured with (-1)^{n_b}; inside-interferometer states are phase shifted and measured
/// with the internal parity (-1)^{2nu} |nu><-nu|.
inline double parity_expectation(const TwoModeState& state, double phi) {
  return detail::parity_moments(state, phi).expectation.real();
}

inline double parity_derivative(const TwoModeState& state, double phi) {
  return detail::parity_moments(state, phi).derivative;
}

inline DetectionResult phase_uncertainty(const TwoModeState& state, double phi) {
  const detail::ParityMoments m = detail::parity_moments(state, phi);
  DetectionResult r;
  r.phi = phi;
  r.expectation = m.expectation.real();
  r.derivative = m.derivative;
  // Weights sum to |psi|^2; rescale so that variance^2 + <P>^2 = 1 holds for the returned pair.
  const double total = m.p_plus + m.p_minus;
  r.variance = 2.0 * std::sqrt(std::max(0.0, m.p_plus * m.p_minus)) / total;
  r.delta_phi = std::abs(r.derivative) < kFlatDerivative ? std::numeric_limits<double>::infinity()
                                                          : r.variance / std::abs(r.derivative);
  return r;
}

/// Phases used for the small-phase limit: phi_k = 1e-2 / (2^k (2 j_max + 1)), k = 0..6.
inline std::vector<double> limit_phases(const TwoModeState& state) {
  std::vector<double> phis;
  const double base = 1e-2 / (state.max_twice_j() + 1.0);
  for (int k = 0; k <= 6; ++k) phis.push_back(std::ldexp(base, -k));
  return phis;
}

inline constexpr double kLimitTolerance = 1e-6;

/// delta_phi as phi -> 0, by polynomial (Richardson/Neville) extrapolation of the samples on
/// limit_phases(). Returns +infinity when every sample is infinite or the samples grow like
/// 1/phi.
inline double phase_uncertainty_limit(const TwoModeState& state) {
  const std::vector<double> phis = limit_phases(state);
  std::vector<double> samples;
  for (double phi : phis) samples.push_back(phase_uncertainty(state, phi).delta_phi);

  auto describe = [&] {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state '" << state.label() << "': samples";
    for (std::size_t k = 0; k < phis.size(); ++k) msg << " (" << phis[k] << ", " << samples[k] << ")";
    return msg.str();
  };

  std::size_t infinite = 0;
  for (double s : samples) infinite += std::isinf(s) ? 1 : 0;
  if (infinite == samples.size()) return std::numeric_limits<double>::infinity();
  if (infinite != 0) throw NumericalLimitError("mixed finite/infinite delta_phi; " + describe());

  bool diverging = true;
  for (std::size_t k = 1; k < samples.size(); ++k) diverging = diverging && samples[k] > 1.8 * samples[k - 1];
  if (diverging) return std::numeric_limits<double>::infinity();

  // Neville tableau evaluated at phi = 0; t[k] holds the current diagonal.
  std::vector<double> t = samples;
  double previous = samples.back();
  const std::size_t n = samples.size();
  for (std::size_t level = 1; level < n; ++level) {
    previous = t[n - 1];
    for (std::size_t k = n - 1; k >= level; --k) {
      const double xa = phis[k - level];
      const double xb = phis[k];
      t[k] = (xa * t[k] - xb * t[k - 1]) / (xa - xb);
    }
  }
  const double limit = t[n - 1];
  const double error = std::abs(limit - previous);
  if (!(error <= kLimitTolerance * std::abs(limit))) {
    std::ostringstream msg;
    msg << "extrapolation did not converge (estimate " << limit << ", error " << error << "); "
        << describe();
    throw NumericalLimitError(msg.str());
  }
  return limit;
}

/// A closed-form expectation, kept complex so that literal i^j factors stay visible.
struct ClosedForm {
  double value = 0.0;
  double imag_residue = 0.0;
};

namespace detail {

// (-1)^x read as exp(i pi x) for half-integer x = twice / 2.
inline Complex minus_one_pow(int twice) {
  return std::polar(1.0, std::numbers::pi * 0.5 * twice);
}
// i^x = exp(i pi x / 2) for half-integer x = twice / 2.
inline Complex i_pow(int twice) { return std::polar(1.0, std::numbers::pi * 0.25 * twice); }

inline ClosedForm closed(Complex z) { return {z.real(), z.imag()}; }

}  // namespace detail

/// Per-family closed-form formulas for <P>, evaluated as written. For "coherent", n is the
/// mean photon number; for every other family it is the total photon number (j = n/2).
inline ClosedForm closed_form_expectation(const std::string& label, int n, double phi,
                                          const std::optional<CombinedStateParams>& params = std::nullopt) {
  detail::require_positive(n, "photon number");
  const HalfInt j = HalfInt::from_twice(n);
  const HalfInt zero{};
  const HalfInt one = HalfInt::from_int(1);
  const HalfInt half = HalfInt::from_twice(1);
  const double t = 2.0 * phi;
  auto d = [&](HalfInt a, HalfInt b) { return d_element(j, a, b, t); };
  auto need_even = [&] {
    if (n % 2 != 0) throw DomainError(label + " closed form needs even N");
  };
  auto need_odd = [&] {
    if (n % 2 != 1) throw DomainError(label + " closed form needs odd N");
  };

  if (label == labels::kCoherent) {
    const double a2 = n;
    return {std::exp(-a2 + a2 * std::sqrt(1.0 + std::cos(t)) / std::numbers::sqrt2), 0.0};
  }
  if (label == labels::kSingleFock) {
    return {std::pow((1.0 + std::cos(t)) / 2.0, j.value()), 0.0};
  }
  if (label == labels::kDualFock) {
    need_even();
    return detail::closed(detail::minus_one_pow(j.twice()) * d(zero, zero));
  }
  if (label == labels::kNoon || label == labels::kNoonInternal) {
    if (n % 2 == 1) return detail::closed(detail::i_pow(2 * (n + 1)) * std::sin(n * phi));
    return detail::closed(detail::i_pow(2 * n) * std::cos(n * phi));
  }
  if (label == labels::kYurke) {
    need_even();
    return detail::closed(detail::minus_one_pow(j.twice()) / 2.0 *
                          (d(zero, zero) - d(one, one) + 2.0 * d(zero, one)));
  }
  if (label == labels::kYuen) {
    need_odd();
    return {0.0, 0.0};
  }
  if (label == labels::kModifiedYuen) {
    need_odd();
    return detail::closed(Complex{0.0, 1.0} * detail::minus_one_pow(j.twice()) * d(half, -half));
  }
  if (label == labels::kPezzeSmerzi) {
    need_even();
    return detail::closed(detail::minus_one_pow(j.twice() + 2) * (d(one, one) + d(-one, one)));
  }
  if (label == labels::kBerryWiseman) {
    const TwoModeState s = berry_wiseman_internal(n);
    const Amplitudes& c = s.components().begin()->second;
    CompensatedSum<Complex> acc;
    for (int r = 0; r <= n; ++r) {
      const double nu = projection_at(j, r).value();
      acc += sign_power(n) * c[static_cast<std::size_t>(n - r)] * c[static_cast<std::size_t>(r)] *
             std::polar(1.0, 2.0 * nu * phi);
    }
    return detail::closed(acc.value());
  }
  if (label == labels::kCombined) {
    need_even();
    const CombinedStateParams p = params.value_or(CombinedStateParams{});
    p.validate();
    const double cn2 = std::pow(combined_normalization(n, p).closed_form, 2);
    const Complex sign_j = detail::minus_one_pow(j.twice());
    const Complex noon = sign_j * (std::polar(1.0, n * phi) + sign_power(n) * std::polar(1.0, -n * phi)) / 2.0;
    const Complex dual = sign_j * d(zero, zero);
    const Complex cross = detail::i_pow(j.twice()) * 2.0 * std::numbers::sqrt2 * p.alpha_mag * p.beta_mag *
                          d(zero, zero) * std::cos(n * phi) * std::cos(p.theta);
    return detail::closed(cn2 * (p.alpha_mag * p.alpha_mag * noon + p.beta_mag * p.beta_mag * dual + cross));
  }
  throw DomainError("no closed form for state label '" + label + "'");
}

}  // namespace parity
