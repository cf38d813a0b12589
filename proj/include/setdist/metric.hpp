#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace setdist {

// Sentinel cutoff meaning "no pruning": every real distance is below it.
inline constexpr double kNoCutoff = std::numeric_limits<double>::infinity();

enum class Norm { L2, LInf };

struct MetricFactor {
  std::size_t dim = 1;
  Norm norm = Norm::L2;
  friend bool operator==(const MetricFactor&, const MetricFactor&) = default;
};

// Finite-dimensional metric space: a product of normed factors under the
// max metric, with an explicit centroid anchoring every truncation ball.
// A plain normed space is the one-factor case; products of spaces
// concatenate factor lists, so X x R carries max{d_X, |alpha - beta|}
// automatically.
class MetricSpace {
 public:
  MetricSpace() = default;

  static MetricSpace line() { return euclidean(1); }

  static MetricSpace euclidean(std::size_t n) {
    MetricSpace s;
    if (n > 0) s.factors_.push_back({n, Norm::L2});
    s.centroid_.assign(n, 0.0);
    s.dim_ = n;
    return s;
  }

  static MetricSpace sup(std::size_t n) {
    MetricSpace s;
    if (n > 0) s.factors_.push_back({n, Norm::LInf});
    s.centroid_.assign(n, 0.0);
    s.dim_ = n;
    return s;
  }

  static MetricSpace product(const MetricSpace& a, const MetricSpace& b) {
    MetricSpace s;
    s.factors_ = a.factors_;
    s.factors_.insert(s.factors_.end(), b.factors_.begin(), b.factors_.end());
    s.centroid_ = a.centroid_;
    s.centroid_.insert(s.centroid_.end(), b.centroid_.begin(), b.centroid_.end());
    s.dim_ = a.dim_ + b.dim_;
    return s;
  }

  MetricSpace with_centroid(std::vector<double> c) const {
    if (c.size() != dim_) throw std::invalid_argument("centroid dimension mismatch");
    MetricSpace s = *this;
    s.centroid_ = std::move(c);
    return s;
  }

  std::size_t dim() const { return dim_; }
  const std::vector<double>& centroid() const { return centroid_; }
  const std::vector<MetricFactor>& factors() const { return factors_; }

  double distance(const double* x, const double* y) const {
    return distance_pruned(x, y, kNoCutoff);
  }
  double distance(std::span<const double> x, std::span<const double> y) const {
    return distance(x.data(), y.data());
  }

  // Exact distance when it is < cutoff; otherwise some value >= cutoff.
  // Lets min-scans abandon a candidate as soon as a partial lower bound
  // already exceeds the best distance found, without changing the minimum.
  double distance_pruned(const double* x, const double* y, double cutoff) const {
    double worst = 0.0;
    std::size_t off = 0;
    for (const MetricFactor& f : factors_) {
      double d;
      if (f.norm == Norm::LInf) {
        d = 0.0;
        for (std::size_t k = 0; k < f.dim; ++k) {
          double t = x[off + k] - y[off + k];
          if (t < 0) t = -t;
          if (t > d) {
            d = t;
            if (d >= cutoff) return d;
          }
        }
      } else {
        double s = 0.0;
        for (std::size_t k = 0; k < f.dim; ++k) {
          double t = x[off + k] - y[off + k];
          s += t * t;
        }
        d = std::sqrt(s);
      }
      if (d > worst) worst = d;
      if (worst >= cutoff) return worst;
      off += f.dim;
    }
    return worst;
  }

  double dist_to_centroid(const double* x) const {
    return distance(x, centroid_.data());
  }
  double dist_to_centroid(std::span<const double> x) const {
    return dist_to_centroid(x.data());
  }

  bool same_geometry(const MetricSpace& o, double tol = 0.0) const {
    if (dim_ != o.dim_ || factors_ != o.factors_) return false;
    for (std::size_t i = 0; i < centroid_.size(); ++i)
      if (std::abs(centroid_[i] - o.centroid_[i]) > tol) return false;
    return true;
  }

 private:
  std::vector<MetricFactor> factors_;
  std::vector<double> centroid_;
  std::size_t dim_ = 0;
};

}  // namespace setdist
