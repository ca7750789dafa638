#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parity/compensated_sum.hpp"
#include "parity/errors.hpp"
#include "parity/half_int.hpp"

namespace parity {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// AtInput states are fed to the full interferometer; InsideInterferometer states
/// already sit between the two beam splitters.
enum class Frame { AtInput, InsideInterferometer };

inline const char* frame_name(Frame f) {
  return f == Frame::AtInput ? "at-input" : "inside-interferometer";
}

/// Pure two-mode state in the Schwinger basis |j, mu>, |j+mu>_a |j-mu>_b.
/// Keys are 2j (total photon number); each amplitude vector runs over mu = +j ... -j.
class TwoModeState {
 public:
  TwoModeState(std::map<int, Amplitudes> components, Frame frame, std::string label,
               double truncation_tail = 0.0)
      : components_(std::move(components)),
        frame_(frame),
        label_(std::move(label)),
        truncation_tail_(truncation_tail) {
    for (const auto& [two_j, amps] : components_) {
      if (two_j < 0 || amps.size() != static_cast<std::size_t>(two_j + 1)) {
        throw DomainError("block 2j = " + std::to_string(two_j) + " has " +
                          std::to_string(amps.size()) + " amplitudes");
      }
    }
  }

  const std::map<int, Amplitudes>& components() const { return components_; }
  Frame frame() const { return frame_; }
  const std::string& label() const { return label_; }
  double truncation_tail() const { return truncation_tail_; }

  int max_twice_j() const { return components_.empty() ? 0 : components_.rbegin()->first; }

  /// Total photon number when the state has a single 2j block.
  std::optional<int> photon_number() const {
    if (components_.size() != 1) return std::nullopt;
    return components_.begin()->first;
  }

  Complex amplitude(HalfInt j, HalfInt mu) const {
    require_projection(j, mu, "mu");
    auto it = components_.find(j.twice());
    if (it == components_.end()) return {};
    return it->second[static_cast<std::size_t>(projection_index(j, mu))];
  }

  double norm_squared() const {
    CompensatedSum<double> acc;
    for (const auto& [two_j, amps] : components_) {
      for (const auto& a : amps) acc += std::norm(a);
    }
    return acc.value();
  }

  double mean_photon_number() const {
    CompensatedSum<double> acc;
    for (const auto& [two_j, amps] : components_) {
      for (const auto& a : amps) acc += two_j * std::norm(a);
    }
    return acc.value();
  }

  TwoModeState with_components(std::map<int, Amplitudes> components) const {
    return TwoModeState(std::move(components), frame_, label_, truncation_tail_);
  }
  TwoModeState with_components(std::map<int, Amplitudes> components, Frame frame) const {
    return TwoModeState(std::move(components), frame, label_, truncation_tail_);
  }

 private:
  std::map<int, Amplitudes> components_;
  Frame frame_;
  std::string label_;
  double truncation_tail_;
};

/// <a|b>, summed over common blocks.
inline Complex inner_product(const TwoModeState& a, const TwoModeState& b) {
  CompensatedSum<Complex> acc;
  for (const auto& [two_j, amps_a] : a.components()) {
    auto it = b.components().find(two_j);
    if (it == b.components().end()) continue;
    for (std::size_t i = 0; i < amps_a.size(); ++i) acc += std::conj(amps_a[i]) * it->second[i];
  }
  return acc.value();
}

/// |<a|b>|, insensitive to global phase.
inline double fidelity(const TwoModeState& a, const TwoModeState& b) {
  return std::abs(inner_product(a, b));
}

/// Two-mode Fock rendering of a fixed-photon-number state: (n_a, n_b, amplitude) for every
/// non-negligible amplitude, in order of decreasing n_a.
struct FockTerm {
  int n_a;
  int n_b;
  Complex amplitude;
};

inline std::vector<FockTerm> fock_terms(const TwoModeState& state, double threshold = 1e-14) {
  std::vector<FockTerm> terms;
  for (auto it = state.components().rbegin(); it != state.components().rend(); ++it) {
    const int two_j = it->first;
    for (int i = 0; i <= two_j; ++i) {
      const Complex a = it->second[static_cast<std::size_t>(i)];
      if (std::abs(a) > threshold) terms.push_back({two_j - i, i, a});
    }
  }
  return terms;
}

}  // namespace parity
