#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace parity {

/// Kahan-Babuska (Neumaier) summation. Works for double and std::complex<double>.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      neumaier(sum_, comp_, x);
    } else {
      auto re = sum_.real(), re_c = comp_.real();
      auto im = sum_.imag(), im_c = comp_.imag();
      neumaier(re, re_c, x.real());
      neumaier(im, im_c, x.imag());
      sum_ = T(re, im);
      comp_ = T(re_c, im_c);
    }
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  static void neumaier(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  T sum_{};
  T comp_{};
};

}  // namespace parity
