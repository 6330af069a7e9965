#include "qtt/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "qtt/error.hpp"

namespace qtt::numerics {

Bracket::Bracket(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    std::ostringstream msg;
    msg << "bracket requires finite lo < hi, got [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

double find_root(const ScalarFunction& f, const Bracket& bracket, double tol, int max_iterations) {
  const double a = bracket.lo();
  const double b = bracket.hi();
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(fa * fb < 0.0)) {
    std::ostringstream msg;
    msg << "f(" << a << ") = " << fa << " and f(" << b << ") = " << fb << " have the same sign";
    throw Error(ErrorCode::NoSignChange, msg.str());
  }

  const auto done = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
  std::uintmax_t iterations = static_cast<std::uintmax_t>(max_iterations);
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, done, iterations);
  if (!done(lo, hi)) {
    std::ostringstream msg;
    msg << "root bracket [" << lo << ", " << hi << "] wider than " << tol << " after "
        << iterations << " iterations";
    throw Error(ErrorCode::MaxIterations, msg.str());
  }
  const double flo = f(lo);
  const double fhi = f(hi);
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

Extremum find_max(const ScalarFunction& f, const Bracket& bracket, double tol, int scan_points) {
  scan_points = std::max(scan_points, 5);
  const double lo = bracket.lo();
  const double hi = bracket.hi();
  const double step = bracket.width() / (scan_points - 1);

  std::vector<double> xs(scan_points);
  std::vector<double> ys(scan_points);
  for (int i = 0; i < scan_points; ++i) {
    xs[i] = (i == scan_points - 1) ? hi : lo + i * step;
    ys[i] = f(xs[i]);
  }

  int peaks = 0;
  int best = 0;
  for (int i = 0; i < scan_points; ++i) {
    if (ys[i] > ys[best]) best = i;
    const bool left_ok = (i == 0) || ys[i] > ys[i - 1];
    const bool right_ok = (i == scan_points - 1) || ys[i] > ys[i + 1];
    if (left_ok && right_ok) ++peaks;
  }
  if (peaks > 1) {
    std::ostringstream msg;
    msg << peaks << " local maxima found on [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::NotUnimodal, msg.str());
  }

  const double sub_lo = xs[std::max(best - 1, 0)];
  const double sub_hi = xs[std::min(best + 1, scan_points - 1)];

  const double scale = std::max(std::abs(xs[best]), bracket.width());
  const double rel = std::max(tol / scale, std::numeric_limits<double>::epsilon());
  const int max_bits = std::numeric_limits<double>::digits / 2;
  const int bits = std::clamp(static_cast<int>(std::ceil(1.0 - std::log2(rel))), 8, max_bits);

  std::uintmax_t iterations = 500;
  const auto negated = [&f](double x) { return -f(x); };
  const auto [x, neg_fx] =
      boost::math::tools::brent_find_minima(negated, sub_lo, sub_hi, bits, iterations);
  if (-neg_fx < ys[best]) return {xs[best], ys[best]};
  return {x, -neg_fx};
}

} // namespace qtt::numerics
