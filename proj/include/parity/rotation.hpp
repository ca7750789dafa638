#pragma once

// Block-level SU(2) transforms on amplitude vectors ordered mu = +j ... -j.

#include <cmath>
#include <numbers>

#include "parity/state.hpp"
#include "parity/wigner.hpp"

namespace parity {

/// exp(-i angle J_z): multiplies each amplitude by exp(-i angle mu).
inline Amplitudes phase_z(HalfInt j, const Amplitudes& in, double angle) {
  Amplitudes out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double mu = projection_at(j, static_cast<int>(i)).value();
    out[i] = in[i] * std::polar(1.0, -angle * mu);
  }
  return out;
}

/// exp(-i theta J_y) applied through the Wigner block.
inline Amplitudes rotate_y(HalfInt j, const Amplitudes& in, double theta) {
  const WignerBlock d = d_block(j, theta);
  const int n = d.dim();
  Amplitudes out(in.size());
  for (int row = 0; row < n; ++row) {
    CompensatedSum<Complex> acc;
    for (int col = 0; col < n; ++col) {
      if (in[static_cast<std::size_t>(col)] != Complex{}) acc += d(row, col) * in[static_cast<std::size_t>(col)];
    }
    out[static_cast<std::size_t>(row)] = acc.value();
  }
  return out;
}

/// 50/50 beam splitter exp(-i pi/2 J_x) (inverse = false) or exp(+i pi/2 J_x) (inverse = true),
/// through exp(-/+ i pi/2 J_x) = exp(i pi/2 J_z) exp(-/+ i pi/2 J_y) exp(-i pi/2 J_z).
inline Amplitudes beam_splitter_block(HalfInt j, const Amplitudes& in, bool inverse) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  Amplitudes v = phase_z(j, in, half_pi);
  v = rotate_y(j, v, inverse ? -half_pi : half_pi);
  return phase_z(j, v, -half_pi);
}

}  // namespace parity
