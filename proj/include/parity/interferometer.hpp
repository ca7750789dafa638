#pragma once

// Beam splitter, phase shifter and full Mach-Zehnder transforms, plus the parity operators.
//
// Conventions: J_x = (a'b + ab')/2, J_y = (a'b - ab')/2i, J_z = (n_a - n_b)/2. The full
// interferometer is exp(-i phi J_y) = BS(inverse) . exp(-i phi J_z) . BS, with
// BS = exp(-i pi/2 J_x). Output parity is (-1)^{n_b} = (-1)^{j - mu}.

#include <complex>
#include <numbers>
#include <string>

#include "parity/rotation.hpp"
#include "parity/state.hpp"

namespace parity {

namespace detail {

template <typename F>
TwoModeState map_blocks(const TwoModeState& state, Frame frame, F&& f) {
  std::map<int, Amplitudes> out;
  for (const auto& [two_j, amps] : state.components()) {
    out.emplace(two_j, f(HalfInt::from_twice(two_j), amps));
  }
  return state.with_components(std::move(out), frame);
}

inline Frame toggled(Frame f) {
  return f == Frame::AtInput ? Frame::InsideInterferometer : Frame::AtInput;
}

}  // namespace detail

/// exp(-i phi J_y) on every block.
inline TwoModeState apply_mzi(const TwoModeState& state, double phi) {
  if (state.frame() != Frame::AtInput) {
    throw FrameError("apply_mzi needs an at-input state; use apply_phase_shifter for '" +
                     state.label() + "'");
  }
  return detail::map_blocks(state, Frame::AtInput,
                            [phi](HalfInt j, const Amplitudes& a) { return rotate_y(j, a, phi); });
}

/// exp(-i pi/2 J_x) (inverse = false) or exp(+i pi/2 J_x) (inverse = true). Toggles the frame.
inline TwoModeState apply_beam_splitter(const TwoModeState& state, bool inverse) {
  return detail::map_blocks(state, detail::toggled(state.frame()),
                            [inverse](HalfInt j, const Amplitudes& a) {
                              return beam_splitter_block(j, a, inverse);
                            });
}

/// exp(-i phi J_z) between the beam splitters.
inline TwoModeState apply_phase_shifter(const TwoModeState& state, double phi) {
  if (state.frame() != Frame::InsideInterferometer) {
    throw FrameError("apply_phase_shifter needs an inside-interferometer state, got '" +
                     state.label() + "'");
  }
  return detail::map_blocks(state, Frame::InsideInterferometer,
                            [phi](HalfInt j, const Amplitudes& a) { return phase_z(j, a, phi); });
}

/// Maps an internal state onto the equivalent input state: the interferometer is operated at
/// a pi/2 bias phase, so the internal state is first shifted by pi/2 and then taken back
/// through the first beam splitter. After this map, output parity of the full interferometer
/// equals the internal parity operator below.
inline TwoModeState to_input_frame(const TwoModeState& state) {
  if (state.frame() != Frame::InsideInterferometer) {
    throw FrameError("to_input_frame needs an inside-interferometer state, got '" + state.label() + "'");
  }
  return apply_beam_splitter(apply_phase_shifter(state, 0.5 * std::numbers::pi), true);
}

/// Output parity (-1)^{n_b} in the |j, mu> basis: diagonal, (-1)^{j - mu}.
inline double output_parity_element(HalfInt j, HalfInt nu, HalfInt mu) {
  require_projection(j, nu, "nu");
  require_projection(j, mu, "mu");
  return nu == mu ? sign_power(integral(j - mu)) : 0.0;
}

/// Parity seen by an internal state (see to_input_frame): <nu|Q|mu> = (-1)^{2 nu} delta_{nu,-mu}.
inline double internal_parity_element(HalfInt j, HalfInt nu, HalfInt mu) {
  require_projection(j, nu, "nu");
  require_projection(j, mu, "mu");
  return nu == -mu ? sign_power(nu.twice()) : 0.0;
}

/// Q = i^N sum_k (-1)^k |k, N-k><N-k, k| in photon-number labels: returns i^N (-1)^k when
/// k' = N - k. Here k counts photons in mode b, i.e. the ket |k, N-k> lists (n_b, n_a).
inline Complex q_matrix_element(int n, int k, int k_p) {
  if (n < 1) throw DomainError("photon number must be positive, got " + std::to_string(n));
  if (k < 0 || k > n || k_p < 0 || k_p > n) {
    throw DomainError("photon labels must lie in [0, " + std::to_string(n) + "]");
  }
  if (k_p != n - k) return {};
  static constexpr Complex powers_of_i[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers_of_i[n % 4] * sign_power(k);
}

}  // namespace parity
