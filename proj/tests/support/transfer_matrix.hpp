#pragma once

#include <array>
#include <complex>

// Independent rectangular-barrier solver: match psi and psi' across both
// interfaces with 2x2 transfer matrices, transmitted amplitude fixed to 1.
namespace qtt::testing {

using cd = std::complex<double>;
using Mat = std::array<std::array<cd, 2>, 2>;

struct TransferResult {
  cd A, B; // left of the barrier, basis e^{ikx}, e^{-ikx}
  cd C, D; // inside, basis e^{-kappa x}, e^{kappa x}
  double R;
};

inline Mat basis(cd k, double x) {
  const cd i(0.0, 1.0);
  const cd p = std::exp(i * k * x), m = std::exp(-i * k * x);
  return {{{p, m}, {i * k * p, -i * k * m}}};
}

inline Mat inverse(const Mat& a) {
  const cd det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return {{{a[1][1] / det, -a[0][1] / det}, {-a[1][0] / det, a[0][0] / det}}};
}

inline std::array<cd, 2> mul(const Mat& a, std::array<cd, 2> v) {
  return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
}

inline TransferResult transfer_solve(double E, double V0, double xL, double xR) {
  const cd k(std::sqrt(2.0 * E), 0.0);
  const cd q = std::sqrt(cd(2.0 * (E - V0), 0.0)); // i kappa, so e^{iqx} = e^{-kappa x}
  const std::array<cd, 2> out{1.0, 0.0};
  const auto inside = mul(inverse(basis(q, xR)), mul(basis(k, xR), out));
  const auto left = mul(inverse(basis(k, xL)), mul(basis(q, xL), inside));
  return {left[0], left[1], inside[0], inside[1], std::norm(left[1]) / std::norm(left[0])};
}

} // namespace qtt::testing
