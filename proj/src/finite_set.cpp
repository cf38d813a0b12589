#include "setdist/finite_set.hpp"

#include <cmath>
#include <stdexcept>

namespace setdist {

namespace {
// Number of `step`-sized steps fitting in [0, len], robust to the usual
// floating-point shortfall at the right endpoint.
std::size_t steps_in(double len, double step) {
  if (step <= 0) throw std::invalid_argument("sampler step must be > 0");
  if (len < 0) throw std::invalid_argument("sampler range is empty");
  return static_cast<std::size_t>(std::floor(len / step + 1e-9));
}
}  // namespace

FiniteSet sample_interval(double a, double b, double step, std::string label) {
  FiniteSet s(MetricSpace::line(), std::move(label));
  std::size_t n = steps_in(b - a, step);
  s.reserve(n + 2);
  double last = a;
  for (std::size_t k = 0; k <= n; ++k) {
    last = a + static_cast<double>(k) * step;
    s.push_back({last});
  }
  if (b - last > 1e-9 * std::max(1.0, std::abs(b))) s.push_back({b});
  return s;
}

FiniteSet sample_box(const MetricSpace& space, std::span<const double> lo,
                     std::span<const double> hi, double step, std::string label) {
  std::size_t n = space.dim();
  if (lo.size() != n || hi.size() != n) throw std::invalid_argument("box bounds dimension mismatch");
  std::vector<std::size_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) counts[i] = steps_in(hi[i] - lo[i], step) + 1;

  FiniteSet s(space, std::move(label));
  std::vector<double> p(n);
  std::vector<std::size_t> idx(n, 0);
  std::size_t total = 1;
  for (std::size_t c : counts) total *= c;
  s.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t i = 0; i < n; ++i) p[i] = lo[i] + static_cast<double>(idx[i]) * step;
    s.push_back(p);
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  return s;
}

FiniteSet sample_ray(const MetricSpace& space, std::span<const double> dir,
                     double extent, double step, std::string label) {
  if (dir.size() != space.dim()) throw std::invalid_argument("ray direction dimension mismatch");
  FiniteSet s(space, std::move(label));
  std::size_t n = steps_in(extent, step);
  s.reserve(n + 1);
  std::vector<double> p(dir.size());
  for (std::size_t k = 0; k <= n; ++k) {
    double t = static_cast<double>(k) * step;
    for (std::size_t i = 0; i < dir.size(); ++i) p[i] = t * dir[i];
    s.push_back(p);
  }
  return s;
}

FiniteSet sample_segment(const MetricSpace& space, std::span<const double> p0,
                         std::span<const double> p1, double step, std::string label) {
  if (p0.size() != space.dim() || p1.size() != space.dim())
    throw std::invalid_argument("segment endpoint dimension mismatch");
  double len = space.distance(p0, p1);
  std::size_t n = len > 0 ? steps_in(len, step) : 0;
  FiniteSet s(space, std::move(label));
  s.reserve(n + 2);
  std::vector<double> p(p0.size());
  for (std::size_t k = 0; k <= n; ++k) {
    double t = n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = p0[i] + t * (p1[i] - p0[i]);
    s.push_back(p);
  }
  if (n == 0 || space.distance(s.point(s.size() - 1), p1) > 1e-12)
    s.push_back(p1);
  return s;
}

}  // namespace setdist
