#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "setdist/metric.hpp"

namespace setdist {

// Finite point cloud standing in for a (possibly infinite) set. Flat
// row-major storage; points are spans of length space().dim().
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(MetricSpace space, std::string label = "")
      : space_(std::move(space)), label_(std::move(label)) {}

  static FiniteSet from_points(MetricSpace space,
                               std::initializer_list<std::initializer_list<double>> pts,
                               std::string label = "") {
    FiniteSet s(std::move(space), std::move(label));
    for (const auto& p : pts) s.push_back(p);
    return s;
  }

  void push_back(std::span<const double> p) {
    if (p.size() != space_.dim()) throw std::invalid_argument("point dimension mismatch");
    coords_.insert(coords_.end(), p.begin(), p.end());
  }
  void push_back(std::initializer_list<double> p) {
    push_back(std::span<const double>(p.begin(), p.size()));
  }

  void append(const FiniteSet& other) {
    if (!space_.same_geometry(other.space_))
      throw std::invalid_argument("space mismatch in append");
    coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
  }

  std::size_t size() const { return space_.dim() == 0 ? 0 : coords_.size() / space_.dim(); }
  bool empty() const { return coords_.empty(); }
  std::size_t dim() const { return space_.dim(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * space_.dim(), space_.dim()};
  }
  const double* point_ptr(std::size_t i) const { return coords_.data() + i * space_.dim(); }

  const MetricSpace& space() const { return space_; }
  const std::vector<double>& raw() const { return coords_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  void reserve(std::size_t n) { coords_.reserve(n * space_.dim()); }
  void clear() { coords_.clear(); }

 private:
  MetricSpace space_;
  std::vector<double> coords_;
  std::string label_;
};

// --- samplers ------------------------------------------------------------

// Uniform 1-D sample of [a, b] including both endpoints (the right endpoint
// is appended exactly when the step does not land on it).
FiniteSet sample_interval(double a, double b, double step, std::string label = "");

// Lattice sample of the box [lo_1,hi_1] x ... x [lo_n,hi_n].
FiniteSet sample_box(const MetricSpace& space, std::span<const double> lo,
                     std::span<const double> hi, double step, std::string label = "");

// {t * dir : t in [0, extent]} sampled with the given step in t.
FiniteSet sample_ray(const MetricSpace& space, std::span<const double> dir,
                     double extent, double step, std::string label = "");

// Segment from p0 to p1, sampled by arc-length parameter with both endpoints.
FiniteSet sample_segment(const MetricSpace& space, std::span<const double> p0,
                         std::span<const double> p1, double step, std::string label = "");

}  // namespace setdist
