#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace qtt::numerics {

/// Running integral F(x) = ∫_{x_0}^{x} f on a fixed node set, each panel
/// integrated adaptively, with a monotone cubic (PCHIP) interpolant between
/// nodes. Immutable after construction and safe to share across threads.
class CumulativeTable {
public:
  /// Needs at least four strictly increasing nodes.
  CumulativeTable(const std::function<double(double)>& f, std::span<const double> nodes,
                  double panel_rel_tol = 1e-12);

  double operator()(double x) const;

  /// Interpolated derivative, i.e. an approximation of f(x).
  double derivative(double x) const;

  double lower() const noexcept { return nodes_.front(); }
  double upper() const noexcept { return nodes_.back(); }
  double total() const noexcept { return values_.back(); }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> values() const noexcept { return values_; }

private:
  struct Interpolant;

  std::vector<double> nodes_;
  std::vector<double> values_;
  std::shared_ptr<const Interpolant> interp_;
};

/// `count` equally spaced nodes covering [lo, hi], endpoints included.
std::vector<double> uniform_nodes(double lo, double hi, int count);

} // namespace qtt::numerics
