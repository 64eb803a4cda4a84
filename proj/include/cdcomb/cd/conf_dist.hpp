#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "cdcomb/interval.hpp"
#include "cdcomb/numkernel/family.hpp"
#include "cdcomb/numkernel/grid_cdf.hpp"

namespace cdcomb {

enum class Exactness { exact, asymptotic };

/// Structural family of the CD in its parameter, used by the density-product
/// combiner to decide whether the location/scale exactness theorems apply.
enum class ShapeClass { location_scale, scale, other };

struct CdMeta {
  std::string family;
  std::optional<int> sample_size;
  std::optional<double> point_estimate;
  std::optional<double> scale;  // e.g. standard error
  ShapeClass shape = ShapeClass::other;
};

/// A confidence distribution: an evaluatable monotone CDF over the parameter
/// line, tagged exact/asymptotic. Values are immutable after construction and
/// cheap to copy (shared immutable state); all member functions are
/// reentrant and safe to call concurrently.
class ConfDist {
 public:
  using Fn = std::function<double(double)>;

  struct Callables {
    Fn cdf;                                // required
    Fn quantile;                           // optional: bisection fallback
    Fn density;                            // optional: central-difference fallback
    Fn log_cdf;                            // optional: log(cdf) fallback, clamped
    Fn log_sf;                             // optional
  };

  ConfDist() = default;

  static ConfDist from_callables(Callables c, Interval support, Exactness ex, CdMeta meta);
  /// H(y) = F((y - loc)/scale) for a base family F.
  static ConfDist location_scale(numkernel::DistFamily f, double loc, double scale,
                                 Exactness ex, CdMeta meta);
  static ConfDist from_grid(numkernel::GridCdf grid, Exactness ex, CdMeta meta);

  double cdf(double y) const;
  double quantile(double p) const;
  double density(double y) const;
  /// log H(y); exact deep-tail value when the constructor installed a closed
  /// form, otherwise log of the double-precision cdf clamped at -745.
  double log_cdf(double y) const;
  double log_sf(double y) const;

  double median() const { return quantile(0.5); }
  double iqr() const { return quantile(0.75) - quantile(0.25); }

  Interval support() const;
  Exactness exactness() const;
  const CdMeta& meta() const;

  bool valid() const { return impl_ != nullptr; }

 private:
  struct Impl;
  explicit ConfDist(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace cdcomb
