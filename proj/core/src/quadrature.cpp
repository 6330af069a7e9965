#include "qtt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qtt/error.hpp"

namespace qtt::numerics {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool splittable;
};

struct ByError {
  bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.error < rhs.error; }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "integrand returned " << y << " at x = " << x;
    throw Error(ErrorCode::NonFiniteSample, msg.str());
  }
  return y;
}

// QUADPACK-style error heuristic on top of |K - G|.
Segment rule(const Integrand& f, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 21> fv{};
  fv[0] = checked(f, centre);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fv[2 * i - 1] = checked(f, centre - half * xk[i]);
    fv[2 * i] = checked(f, centre + half * xk[i]);
  }

  double kronrod = fv[0] * wk[0];
  double gauss = 0.0;
  double abs_sum = std::abs(fv[0]) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    kronrod += wk[i] * pair;
    abs_sum += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 1) gauss += wg[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = wk[0] * std::abs(fv[0] - mean);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    asc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  }

  const double value = kronrod * half;
  const double resabs = abs_sum * std::abs(half);
  const double resasc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  const double width_floor = 1000.0 * kEps * std::max(std::abs(a), std::abs(b));
  const bool splittable = (b - a) > std::max(width_floor, 4.0 * std::numeric_limits<double>::min());
  return {a, b, value, err, splittable};
}

} // namespace

QuadratureResult kronrod21(const Integrand& f, double a, double b) {
  const Segment s = rule(f, a, b);
  return {s.value, s.error, 21};
}

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double rel_tol,
                                    double abs_tol, int max_subdivisions) {
  if (!(a <= b)) {
    throw Error(ErrorCode::InvalidArgument, "integration limits must satisfy a <= b");
  }
  if (a == b) return {0.0, 0.0, 1};

  int evaluations = 0;
  std::priority_queue<Segment, std::vector<Segment>, ByError> work;
  std::vector<Segment> frozen; // too narrow to bisect any further

  Segment first = rule(f, a, b);
  evaluations += 21;
  double total = first.value;
  double total_err = first.error;
  work.push(first);

  auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };

  int subdivisions = 0;
  while (total_err > target()) {
    if (work.empty() || subdivisions >= max_subdivisions) {
      std::ostringstream msg;
      msg << "error estimate " << total_err << " above target " << target() << " after "
          << subdivisions << " subdivisions on [" << a << ", " << b << "]";
      throw Error(ErrorCode::NonConvergence, msg.str());
    }
    Segment worst = work.top();
    work.pop();
    if (!worst.splittable) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = rule(f, worst.a, mid);
    Segment right = rule(f, mid, worst.b);
    evaluations += 42;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
  }

  // Re-sum to shed the drift of the running totals.
  double value = 0.0;
  double error = 0.0;
  for (const auto& s : frozen) {
    value += s.value;
    error += s.error;
  }
  while (!work.empty()) {
    value += work.top().value;
    error += work.top().error;
    work.pop();
  }
  return {value, error, evaluations};
}

} // namespace qtt::numerics
