#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "minkgeo/errors.hpp"

namespace minkgeo {

/// Tolerance for the unit-length check on frame vectors and normals.
inline constexpr double kUnitLengthTol = 1e-9;

/// Linear independence threshold on |det| of a frame matrix; also the
/// zero-length cutoff for vectors that must be nonzero.
inline constexpr double kIndependenceTol = 1e-12;

/// Distinguished exponent value selecting the maximum metric.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

inline double norm2(std::span<const double> v) {
  return std::sqrt(dot(v, v));
}

/// Determinant by Gaussian elimination with partial pivoting. `m` is a
/// row-major n*n copy that gets destroyed.
inline double determinant(std::vector<double> m, std::size_t n) {
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
    if (m[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
      det = -det;
    }
    const double lead = m[col * n + col];
    det *= lead;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r * n + col] / lead;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
    }
  }
  return det;
}

inline double pow_integer(double x, unsigned k) {
  double r = 1.0;
  while (k != 0) {
    if (k & 1u) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

/// x^p for x >= 0 with fast paths for small integer and half-integer p.
inline double pow_pos(double x, double p) {
  if (x == 0.0) return 0.0;
  double ip;
  if (std::modf(p, &ip) == 0.0 && p > 0.0 && p <= 64.0)
    return pow_integer(x, static_cast<unsigned>(p));
  if (std::modf(2.0 * p, &ip) == 0.0 && p > 0.0 && p <= 64.0)
    return pow_integer(x, static_cast<unsigned>(p - 0.5)) * std::sqrt(x);
  return std::pow(x, p);
}

/// p-combination (sum of p-th powers, then p-th root) of nonnegative terms.
/// The general path factors out the largest term so that intermediate powers
/// stay in [0, 1] regardless of p; p = infinity is evaluated as a plain max.
inline double lp_combine(const double* terms, std::size_t n, double p) {
  double sigma = 0.0;
  for (std::size_t i = 0; i < n; ++i) sigma = std::max(sigma, terms[i]);
  if (sigma == 0.0) return 0.0;
  if (std::isinf(p)) return sigma;
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += terms[i];
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = terms[i] / sigma;
      s += r * r;
    }
    return sigma * std::sqrt(s);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += pow_pos(terms[i] / sigma, p);
  return sigma * std::pow(s, 1.0 / p);
}

constexpr std::size_t kStackTerms = 16;

inline void check_exponent(double p) {
  if (std::isnan(p) || p <= 0.0)
    throw UnsupportedExponent("exponent must be positive or infinity");
}

}  // namespace detail

/// A point of R^n, n >= 2, with finite coordinates.
class Point {
 public:
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw DimensionMismatch("Point needs dimension >= 2");
    for (double c : coords_)
      if (!std::isfinite(c)) throw std::invalid_argument("Point coordinates must be finite");
  }

  static Point origin(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  bool operator==(const Point& other) const { return coords_ == other.coords_; }

 private:
  std::vector<double> coords_;
};

/// Coordinatewise sum of a point and a displacement.
inline Point translate(const Point& p, const Point& by) {
  if (p.dimension() != by.dimension()) throw DimensionMismatch("translate: dimensions differ");
  std::vector<double> c(p.dimension());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = p[j] + by[j];
  return Point(std::move(c));
}

/// n linearly independent unit vectors with their cached determinant.
/// Construction validates: every row unit length within kUnitLengthTol
/// (unless `normalize` rescales them first) and |det| above kIndependenceTol.
class Frame {
 public:
  explicit Frame(const std::vector<std::vector<double>>& rows, bool normalize = false) {
    n_ = rows.size();
    if (n_ < 2) throw DimensionMismatch("Frame needs n >= 2 vectors");
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw DimensionMismatch("Frame rows must be n-dimensional");
      for (double c : row) {
        if (!std::isfinite(c)) throw std::invalid_argument("Frame entries must be finite");
        data_.push_back(c);
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const double len = detail::norm2(row(i));
      if (len < kIndependenceTol) throw ZeroVector("frame row is (nearly) zero");
      if (normalize) {
        for (std::size_t j = 0; j < n_; ++j) data_[i * n_ + j] /= len;
      } else if (std::abs(len - 1.0) > kUnitLengthTol) {
        throw NotUnit("frame row is not unit length");
      }
    }
    det_ = detail::determinant(data_, n_);
    if (std::abs(det_) <= kIndependenceTol)
      throw DependentFrame("frame vectors are linearly dependent");
  }

  std::size_t dimension() const { return n_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * n_, n_);
  }
  double det() const { return det_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;  // row-major
  double det_ = 0.0;
};

/// Checked Frame construction; rescales rows to unit length first when
/// `normalize` is set.
inline Frame validate_frame(const std::vector<std::vector<double>>& rows, bool normalize = false) {
  return Frame(rows, normalize);
}

/// Frame + positive weights + exponent: everything that fixes one distance
/// function of the family. Exponents in (0, 1) are accepted (they give a
/// distance but not a metric); kInf selects the maximum form.
class MetricSpec {
 public:
  MetricSpec(Frame frame, std::vector<double> weights, double exponent)
      : frame_(std::move(frame)), weights_(std::move(weights)), exponent_(exponent) {
    if (weights_.size() != frame_.dimension())
      throw DimensionMismatch("MetricSpec: one weight per frame vector");
    for (double w : weights_)
      if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("MetricSpec weights must be positive");
    detail::check_exponent(exponent_);
  }

  const Frame& frame() const { return frame_; }
  std::span<const double> weights() const { return weights_; }
  double exponent() const { return exponent_; }
  std::size_t dimension() const { return frame_.dimension(); }

  /// True iff the distance satisfies the triangle inequality (p >= 1 or inf).
  bool is_metric() const { return exponent_ >= 1.0; }

 private:
  Frame frame_;
  std::vector<double> weights_;
  double exponent_;
};

/// Hyperplane through `anchor` with unit normal `normal`.
struct HyperplaneSpec {
  HyperplaneSpec(Point anchor_point, std::vector<double> unit_normal)
      : anchor(std::move(anchor_point)), normal(std::move(unit_normal)) {
    if (normal.size() != anchor.dimension())
      throw DimensionMismatch("HyperplaneSpec: normal and anchor dimensions differ");
    if (std::abs(detail::norm2(normal) - 1.0) > kUnitLengthTol)
      throw NotUnit("hyperplane normal is not unit length");
  }

  Point anchor;
  std::vector<double> normal;
};

/// Euclidean distance from `y` to the hyperplane.
inline double hyperplane_distance(const HyperplaneSpec& h, const Point& y) {
  if (y.dimension() != h.anchor.dimension())
    throw DimensionMismatch("hyperplane_distance: dimensions differ");
  double s = 0.0;
  for (std::size_t j = 0; j < h.normal.size(); ++j) s += h.normal[j] * (h.anchor[j] - y[j]);
  return std::abs(s);
}

namespace detail {

template <typename TermFn>
double combine_terms(std::size_t n, double p, TermFn&& term) {
  double stack[kStackTerms] = {};
  std::vector<double> heap;
  double* terms = stack;
  if (n > kStackTerms) {
    heap.resize(n);
    terms = heap.data();
  }
  for (std::size_t i = 0; i < n; ++i) terms[i] = term(i);
  return lp_combine(terms, n, p);
}

}  // namespace detail

/// The family's distance between x and y. Finite p evaluates
/// (sum_i (w_i |<v_i, x-y>|)^p)^(1/p); p = kInf takes the max of the terms.
inline double distance(const MetricSpec& spec, const Point& x, const Point& y) {
  const std::size_t n = spec.dimension();
  if (x.dimension() != n || y.dimension() != n)
    throw DimensionMismatch("distance: point dimension differs from spec");
  return detail::combine_terms(n, spec.exponent(), [&](std::size_t i) {
    std::span<const double> row = spec.frame().row(i);
    double proj = 0.0;
    for (std::size_t j = 0; j < n; ++j) proj += row[j] * (x[j] - y[j]);
    return spec.weights()[i] * std::abs(proj);
  });
}

/// Induced norm: the distance from the origin.
inline double norm(const MetricSpec& spec, const Point& x) {
  const std::size_t n = spec.dimension();
  if (x.dimension() != n) throw DimensionMismatch("norm: point dimension differs from spec");
  return detail::combine_terms(n, spec.exponent(), [&](std::size_t i) {
    return spec.weights()[i] * std::abs(detail::dot(spec.frame().row(i), x.coords()));
  });
}

/// Ratio between the family's distance and the Euclidean distance for any
/// two points on a line with this direction. Invariant under rescaling of
/// `direction`.
inline double line_scale_factor(const MetricSpec& spec, const Point& direction) {
  const std::size_t n = spec.dimension();
  if (direction.dimension() != n)
    throw DimensionMismatch("line_scale_factor: dimension differs from spec");
  const double len = detail::norm2(direction.coords());
  if (len < kIndependenceTol) throw ZeroVector("line direction is (nearly) zero");
  const double combined = detail::combine_terms(n, spec.exponent(), [&](std::size_t i) {
    return spec.weights()[i] * std::abs(detail::dot(spec.frame().row(i), direction.coords()));
  });
  return combined / len;
}

enum class VariantMode {
  kPrime,        // non-unit frame vectors; each projection divided by the row length
  kDoublePrime,  // unit vectors with weights applied outside the p-th power
};

/// The two alternative forms of the family: PRIME normalizes arbitrary
/// independent vectors on the fly, DOUBLE_PRIME moves the weights out of the
/// inner power (so its maximum form is weight-independent).
class VariantSpec {
 public:
  VariantSpec(VariantMode mode, const std::vector<std::vector<double>>& rows,
              std::vector<double> coeffs, double exponent)
      : mode_(mode), coeffs_(std::move(coeffs)), exponent_(exponent) {
    n_ = rows.size();
    if (n_ < 2) throw DimensionMismatch("VariantSpec needs n >= 2 vectors");
    if (coeffs_.size() != n_) throw DimensionMismatch("VariantSpec: one coefficient per vector");
    for (double c : coeffs_)
      if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("VariantSpec coefficients must be positive");
    detail::check_exponent(exponent_);
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw DimensionMismatch("VariantSpec rows must be n-dimensional");
      for (double c : row) {
        if (!std::isfinite(c)) throw std::invalid_argument("VariantSpec entries must be finite");
        data_.push_back(c);
      }
    }
    row_lengths_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      row_lengths_[i] = detail::norm2(row(i));
      if (row_lengths_[i] < kIndependenceTol) throw ZeroVector("variant row is (nearly) zero");
      if (mode_ == VariantMode::kDoublePrime &&
          std::abs(row_lengths_[i] - 1.0) > kUnitLengthTol)
        throw NotUnit("DOUBLE_PRIME variant requires unit vectors");
    }
    if (std::abs(detail::determinant(data_, n_)) <= kIndependenceTol)
      throw DependentFrame("variant vectors are linearly dependent");
  }

  VariantMode mode() const { return mode_; }
  std::size_t dimension() const { return n_; }
  double exponent() const { return exponent_; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * n_, n_);
  }
  double row_length(std::size_t i) const { return row_lengths_[i]; }

 private:
  VariantMode mode_;
  std::size_t n_ = 0;
  std::vector<double> data_;
  std::vector<double> row_lengths_;
  std::vector<double> coeffs_;
  double exponent_;
};

inline double variant_distance(const VariantSpec& vspec, const Point& x, const Point& y) {
  const std::size_t n = vspec.dimension();
  if (x.dimension() != n || y.dimension() != n)
    throw DimensionMismatch("variant_distance: point dimension differs from spec");
  auto projection = [&](std::size_t i) {
    std::span<const double> row = vspec.row(i);
    double proj = 0.0;
    for (std::size_t j = 0; j < n; ++j) proj += row[j] * (x[j] - y[j]);
    return std::abs(proj);
  };
  const double p = vspec.exponent();
  if (vspec.mode() == VariantMode::kPrime) {
    return detail::combine_terms(n, p, [&](std::size_t i) {
      return vspec.coeffs()[i] * projection(i) / vspec.row_length(i);
    });
  }
  // DOUBLE_PRIME: the p -> infinity limit drops the coefficients entirely.
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, projection(i));
    return m;
  }
  double sigma = 0.0;
  std::vector<double> projs(n);
  for (std::size_t i = 0; i < n; ++i) {
    projs[i] = projection(i);
    sigma = std::max(sigma, projs[i]);
  }
  if (sigma == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += vspec.coeffs()[i] * detail::pow_pos(projs[i] / sigma, p);
  return sigma * std::pow(s, 1.0 / p);
}

}  // namespace minkgeo
