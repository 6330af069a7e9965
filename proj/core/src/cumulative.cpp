#include "qtt/cumulative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

// pchip.hpp in Boost 1.74 calls unqualified isnan; math.h puts it in scope.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "qtt/error.hpp"
#include "qtt/quadrature.hpp"

namespace qtt::numerics {

struct CumulativeTable::Interpolant {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

CumulativeTable::CumulativeTable(const std::function<double(double)>& f,
                                 std::span<const double> nodes, double panel_rel_tol)
    : nodes_(nodes.begin(), nodes.end()) {
  if (nodes_.size() < 4) {
    throw Error(ErrorCode::InvalidArgument, "cumulative table needs at least four nodes");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      std::ostringstream msg;
      msg << "table nodes not strictly increasing at index " << i;
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
  }

  values_.resize(nodes_.size());
  values_[0] = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const auto panel = integrate_adaptive(f, nodes_[i - 1], nodes_[i], panel_rel_tol, 1e-300);
    values_[i] = values_[i - 1] + panel.value;
  }

  std::vector<double> x = nodes_;
  std::vector<double> y = values_;
  // Endpoint slopes are the integrand itself; that keeps the cubic exact to
  // first order at both ends instead of using the one-sided PCHIP estimate.
  const auto slope_at = [&f](double at) {
    const double d = f(at);
    return std::isfinite(d) ? d : std::numeric_limits<double>::quiet_NaN();
  };
  const double left_slope = slope_at(nodes_.front());
  const double right_slope = slope_at(nodes_.back());
  interp_ = std::make_shared<const Interpolant>(Interpolant{
      boost::math::interpolators::pchip<std::vector<double>>(std::move(x), std::move(y),
                                                             left_slope, right_slope)});
}

double CumulativeTable::operator()(double x) const {
  return interp_->spline(std::clamp(x, nodes_.front(), nodes_.back()));
}

double CumulativeTable::derivative(double x) const {
  return interp_->spline.prime(std::clamp(x, nodes_.front(), nodes_.back()));
}

std::vector<double> uniform_nodes(double lo, double hi, int count) {
  if (count < 2 || !(lo < hi)) {
    throw Error(ErrorCode::InvalidArgument, "uniform_nodes requires count >= 2 and lo < hi");
  }
  std::vector<double> out(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = lo + i * step;
  out.back() = hi;
  return out;
}

} // namespace qtt::numerics
