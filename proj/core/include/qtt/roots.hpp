#pragma once

#include <functional>

namespace qtt::numerics {

/// Closed interval [lo, hi] with lo < hi.
class Bracket {
public:
  Bracket(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }

private:
  double lo_;
  double hi_;
};

using ScalarFunction = std::function<double(double)>;

/// Bracketed root of f to a final bracket width <= tol (TOMS 748 hybrid).
/// Throws NoSignChange when f(lo) and f(hi) share a sign, MaxIterations when
/// the iteration budget runs out.
double find_root(const ScalarFunction& f, const Bracket& bracket, double tol,
                 int max_iterations = 200);

struct Extremum {
  double x;
  double fx;
};

/// Maximum of f on the bracket.
///
/// A coarse scan of `scan_points` samples first checks that f has a single
/// local maximum; otherwise NotUnimodal is thrown and the caller has to split
/// the bracket. Brent's parabolic search then refines around the best sample.
/// A flat maximum can only be located to about sqrt(eps) relative, so tol is
/// clamped from below at that level.
Extremum find_max(const ScalarFunction& f, const Bracket& bracket, double tol,
                  int scan_points = 64);

} // namespace qtt::numerics
