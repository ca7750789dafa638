#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "parity/interferometer.hpp"
#include "parity/oracle.hpp"
#include "parity/states.hpp"

using namespace parity;

namespace {

constexpr double kR = std::numbers::sqrt2 / 2;

HalfInt half(int twice) { return HalfInt::from_twice(twice); }

Amplitudes only_block(const TwoModeState& s) {
  EXPECT_EQ(s.components().size(), 1u);
  return s.components().begin()->second;
}

void expect_fock(const TwoModeState& s, const std::vector<FockTerm>& expected, double tol = 1e-12) {
  const auto terms = fock_terms(s, 1e-12);
  ASSERT_EQ(terms.size(), expected.size()) << s.label();
  // Compare up to a global phase fixed by the first term.
  const Complex phase = terms[0].amplitude / expected[0].amplitude;
  EXPECT_NEAR(std::abs(phase), 1.0, tol);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    EXPECT_EQ(terms[i].n_a, expected[i].n_a) << s.label() << " term " << i;
    EXPECT_EQ(terms[i].n_b, expected[i].n_b) << s.label() << " term " << i;
    EXPECT_LT(std::abs(terms[i].amplitude - phase * expected[i].amplitude), tol) << s.label() << " term " << i;
  }
}

}  // namespace

TEST(Coherent, VacuumAtZeroMean) {
  const auto s = coherent_input(0.0);
  ASSERT_EQ(s.components().size(), 1u);
  EXPECT_EQ(s.components().begin()->first, 0);
  EXPECT_EQ(s.amplitude(half(0), half(0)), Complex(1.0));
}

TEST(Coherent, MeanPhotonNumberIsNbar) {
  for (double nbar : {0.5, 4.0, 9.0, 25.0}) {
    EXPECT_NEAR(coherent_input(nbar).mean_photon_number(), nbar, 1e-9) << nbar;
  }
}

TEST(Coherent, TruncationTailAndNorm) {
  const auto s = coherent_input(16.0, 0.0, 1e-12);
  EXPECT_LT(s.truncation_tail(), 1e-12);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(s.frame(), Frame::AtInput);
  // Smallest cutoff: dropping the last kept block would exceed the bound.
  const auto& last = s.components().rbegin()->second[0];
  EXPECT_GE(s.truncation_tail() + std::norm(last) * (1.0 - s.truncation_tail()), 1e-12);
}

TEST(Coherent, AmplitudesArePoissonRoots) {
  const double nbar = 4.0, phase = 0.3;
  const auto s = coherent_input(nbar, phase);
  const double renorm = 1.0 / std::sqrt(1.0 - s.truncation_tail());
  for (const auto& [two_j, amps] : s.components()) {
    const double mag = std::exp(-nbar / 2) * std::pow(nbar, two_j / 2.0) / std::sqrt(std::tgamma(two_j + 1.0));
    EXPECT_NEAR(std::abs(amps[0] - std::polar(mag * renorm, two_j * phase)), 0.0, 1e-14);
    for (std::size_t i = 1; i < amps.size(); ++i) EXPECT_EQ(amps[i], Complex{});
  }
}

TEST(Coherent, RejectsBadArguments) {
  EXPECT_THROW(coherent_input(-1.0), DomainError);
  EXPECT_THROW(coherent_input(1.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(coherent_input(1.0, 0.0, 1e-3), DomainError);
}

TEST(SingleFock, Examples) {
  EXPECT_EQ(single_fock_input(1).amplitude(half(1), half(1)), Complex(1.0));
  EXPECT_EQ(single_fock_input(2).amplitude(half(2), half(2)), Complex(1.0));
  const auto s = single_fock_input(5);
  EXPECT_EQ(s.components().begin()->first, 5);
  EXPECT_EQ(only_block(s)[0], Complex(1.0));
  EXPECT_THROW(single_fock_input(0), DomainError);
}

TEST(DualFock, Examples) {
  for (int n : {1, 3, 7}) {
    const auto s = dual_fock_input(n);
    EXPECT_EQ(s.components().begin()->first, 2 * n);
    EXPECT_EQ(s.amplitude(HalfInt::from_int(n), half(0)), Complex(1.0));
    EXPECT_DOUBLE_EQ(s.mean_photon_number(), 2.0 * n);
  }
}

TEST(NoonInternal, Examples) {
  const auto s1 = noon_internal(1);
  EXPECT_NEAR(std::abs(s1.amplitude(half(1), half(1)) - kR), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(s1.amplitude(half(1), half(-1)) - kR), 0.0, 1e-16);
  const auto s2 = noon_internal(2);
  EXPECT_EQ(s2.amplitude(half(2), half(0)), Complex{});
  EXPECT_NEAR(noon_internal(4).norm_squared(), 1.0, 1e-15);
  EXPECT_EQ(s2.frame(), Frame::InsideInterferometer);
}

TEST(NoonInput, MatchesClosedFormCoefficients) {
  for (int n = 1; n <= 100; n += (n < 12 ? 1 : 11)) {
    const HalfInt j = half(n);
    const auto& a = only_block(noon_input(n));
    for (int i = 0; i <= n; ++i) {
      const HalfInt mu = projection_at(j, i);
      const double m = mu.value(), jj = j.value(), q = std::numbers::pi / 2;
      const Complex expected =
          kR * (std::polar(1.0, (m - jj) * q) * d_element(j, mu, j, q) +
                std::polar(1.0, (m + jj) * q) * d_element(j, mu, -j, q));
      ASSERT_LT(std::abs(a[static_cast<std::size_t>(i)] - expected), 1e-10) << "N=" << n << " i=" << i;
    }
  }
}

TEST(NoonInput, EqualsBeamSplitterOnInternal) {
  const auto via_bs = apply_beam_splitter(noon_internal(1), false);
  EXPECT_NEAR(fidelity(via_bs, noon_input(1)), 1.0, 1e-12);
  EXPECT_EQ(via_bs.frame(), Frame::AtInput);
}

TEST(NoonInput, HundredPhotonEnvelope) {
  const auto& a = only_block(noon_input(100));
  int sign_changes = 0;
  for (int i = 0; i <= 100; ++i) {
    EXPECT_NEAR(std::abs(a[static_cast<std::size_t>(i)]), std::abs(a[static_cast<std::size_t>(100 - i)]), 1e-12);
    if (i > 0 && a[static_cast<std::size_t>(i)].real() * a[static_cast<std::size_t>(i - 1)].real() < 0) ++sign_changes;
  }
  EXPECT_GT(sign_changes, 10);  // oscillatory, not a single-signed envelope
}

TEST(NoonInput, MatchesDenseExponential) {
  const auto g = oracle::build_generators(4);
  const auto v = oracle::evolve(oracle::to_fock_vector(only_block(noon_internal(4))), g.jx, std::numbers::pi / 2);
  const auto& a = only_block(noon_input(4));
  for (int i = 0; i <= 4; ++i) EXPECT_LT(std::abs(a[static_cast<std::size_t>(i)] - v(i)), 1e-10);
}

TEST(Yurke, Examples) {
  const auto s = yurke_input(2);
  EXPECT_NEAR(std::abs(s.amplitude(half(2), half(0)) - kR), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(s.amplitude(half(2), half(2)) - kR), 0.0, 1e-16);
  expect_fock(s, {{2, 0, kR}, {1, 1, kR}});
  EXPECT_THROW(yurke_input(1), DomainError);
}

TEST(Yuen, Examples) {
  const auto plain = yuen_input(1, false);
  EXPECT_LT(std::abs(plain.amplitude(half(1), half(1)) - kR), 1e-16);
  EXPECT_LT(std::abs(plain.amplitude(half(1), half(-1)) - Complex(0, kR)), 1e-16);
  const auto modified = yuen_input(1, true);
  EXPECT_LT(std::abs(modified.amplitude(half(1), half(-1)) - kR), 1e-16);
  EXPECT_EQ(modified.label(), "modified-yuen");
  EXPECT_THROW(yuen_input(2, false), DomainError);
  EXPECT_THROW(yuen_input(2, true), DomainError);
}

TEST(PezzeSmerzi, Examples) {
  const auto s = pezze_smerzi_input(2);
  EXPECT_EQ(s.amplitude(half(2), half(0)), Complex{});
  EXPECT_LT(std::abs(s.amplitude(half(2), half(2)) - kR), 1e-16);
  EXPECT_LT(std::abs(s.amplitude(half(2), half(-2)) - kR), 1e-16);
  expect_fock(pezze_smerzi_input(4), {{3, 1, kR}, {1, 3, kR}});
  EXPECT_THROW(pezze_smerzi_input(3), DomainError);
}

TEST(BerryWiseman, Examples) {
  const auto s1 = berry_wiseman_internal(1);
  const double scale = 1.0 / std::sqrt(1.5);
  EXPECT_NEAR(s1.amplitude(half(1), half(1)).real(), std::sin(2 * std::numbers::pi / 3) * scale, 1e-15);
  EXPECT_NEAR(s1.amplitude(half(1), half(-1)).real(), std::sin(std::numbers::pi / 3) * scale, 1e-15);
  EXPECT_NEAR(s1.norm_squared(), 1.0, 1e-12);
  const auto& a = only_block(berry_wiseman_internal(2));
  EXPECT_NEAR(a[0].real(), a[2].real(), 1e-15);
  for (int n = 1; n <= 50; ++n) EXPECT_NEAR(berry_wiseman_internal(n).norm_squared(), 1.0, 1e-12) << n;
  EXPECT_EQ(s1.frame(), Frame::InsideInterferometer);
}

TEST(Combined, LimitingCases) {
  for (int n : {2, 4, 10}) {
    EXPECT_NEAR(fidelity(combined_input(n, {1.0, 0.0, 0.3}), noon_input(n)), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(combined_input(n, {0.0, 1.0, 0.0}), dual_fock_input(n / 2)), 1.0, 1e-12);
  }
}

TEST(Combined, NormalizationAndClosedForm) {
  const CombinedStateParams p{kR, kR, 0.0};
  EXPECT_NEAR(combined_input(4, p).norm_squared(), 1.0, 1e-10);
  const auto report = combined_normalization(4, p);
  EXPECT_LT(report.discrepancy, 1e-8);
  EXPECT_FALSE(report.flagged);
  // The explicit state: numeric C_N times the raw superposition is the returned state.
  const auto s = combined_input(4, p);
  const auto& a = only_block(s);
  const auto& noon = only_block(noon_input(4));
  for (int i = 0; i <= 4; ++i) {
    Complex raw = kR * noon[static_cast<std::size_t>(i)];
    if (i == 2) raw += kR;
    EXPECT_LT(std::abs(a[static_cast<std::size_t>(i)] - report.numeric * raw), 1e-14);
  }
}

TEST(Combined, NumericNormalizationUsesTheTrueOverlap) {
  // <dual|noon_input> = sqrt(2) d^j_{j,0}(pi/2) exp(i N pi/4), so the interference term is
  // cos(theta + N pi/4); it agrees with cos(theta - N pi/4) only when N = 0 mod 4.
  for (int n : {2, 4, 6, 8, 10}) {
    for (double theta : {0.0, 0.4, 2.0}) {
      const CombinedStateParams p{std::sqrt(0.3), std::sqrt(0.7), theta};
      const HalfInt j = half(n);
      const double cross = 2 * std::numbers::sqrt2 * p.alpha_mag * p.beta_mag *
                           d_element(j, j, half(0), std::numbers::pi / 2) * std::cos(theta + n * std::numbers::pi / 4);
      EXPECT_NEAR(combined_normalization(n, p).numeric, 1.0 / std::sqrt(1.0 + cross), 1e-12);
      if (n % 4 == 0) {
        EXPECT_FALSE(combined_normalization(n, p).flagged);
      }
    }
  }
}

TEST(Combined, RejectsInvalidParameters) {
  EXPECT_THROW(combined_input(3, {}), DomainError);
  EXPECT_THROW(combined_input(4, {0.5, 0.5, 0.0}), DomainError);
  EXPECT_THROW(combined_input(4, {1.2, 0.0, 0.0}), DomainError);
}

TEST(FockNotation, TableRows) {
  expect_fock(single_fock_input(6), {{6, 0, 1.0}});
  expect_fock(dual_fock_input(3), {{3, 3, 1.0}});
  expect_fock(yurke_input(8), {{5, 3, kR}, {4, 4, kR}});
  expect_fock(yuen_input(9, true), {{5, 4, kR}, {4, 5, kR}});
  expect_fock(pezze_smerzi_input(8), {{5, 3, kR}, {3, 5, kR}});
  expect_fock(noon_internal(8), {{8, 0, kR}, {0, 8, kR}});
  // Coherent: |alpha>_a |0>_b, all photons in mode a.
  for (const auto& t : fock_terms(coherent_input(3.0))) EXPECT_EQ(t.n_b, 0);
}

TEST(Frames, FamilyAssignment) {
  EXPECT_EQ(noon_internal(3).frame(), Frame::InsideInterferometer);
  EXPECT_EQ(berry_wiseman_internal(3).frame(), Frame::InsideInterferometer);
  for (const auto& s : {coherent_input(2.0), single_fock_input(3), dual_fock_input(2), noon_input(3), yurke_input(4),
                        yuen_input(3, false), yuen_input(3, true), pezze_smerzi_input(4), combined_input(4, {})}) {
    EXPECT_EQ(s.frame(), Frame::AtInput) << s.label();
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12) << s.label();
  }
}
