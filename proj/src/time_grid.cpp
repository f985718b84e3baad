#include <algorithm>
#include <cmath>
#include <string>

#include "cohlab/errors.hpp"
#include "cohlab/propagator.hpp"

namespace cohlab {

TimeGrid::TimeGrid(std::vector<double> samples, Layout layout)
    : samples_(std::move(samples)), layout_(layout) {}

TimeGrid TimeGrid::uniform(double t_max, std::size_t points) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("TimeGrid: t_max must be positive");
  if (points < 2) throw DomainError("TimeGrid: need at least two samples");
  std::vector<double> samples(points);
  const double h = t_max / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) samples[k] = h * static_cast<double>(k);
  samples.back() = t_max;
  return TimeGrid(std::move(samples), Layout::uniform);
}

TimeGrid TimeGrid::log_spaced(double t_min, double t_max, std::size_t points) {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("TimeGrid: need 0 < t_min < t_max");
  if (points < 3) throw DomainError("TimeGrid: log grid needs at least three samples");
  std::vector<double> samples(points);
  samples[0] = 0.0;
  const double ratio = std::log(t_max / t_min) / static_cast<double>(points - 2);
  for (std::size_t k = 1; k < points; ++k) {
    samples[k] = t_min * std::exp(ratio * static_cast<double>(k - 1));
  }
  samples.back() = t_max;
  return TimeGrid(std::move(samples), Layout::log_spaced);
}

TimeGrid TimeGrid::from_samples(std::vector<double> samples) {
  if (samples.size() < 2) throw DomainError("TimeGrid: need at least two samples");
  if (samples.front() != 0.0) throw DomainError("TimeGrid: first sample must be 0");
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (!(samples[k] > samples[k - 1]) || !std::isfinite(samples[k])) {
      throw DomainError("TimeGrid: samples must be strictly increasing (index " + std::to_string(k) + ")");
    }
  }
  const double h = samples[1];
  bool uniform = true;
  for (std::size_t k = 1; k < samples.size() && uniform; ++k) {
    uniform = std::abs(samples[k] - h * static_cast<double>(k)) <= 1e-12 * samples.back();
  }
  return TimeGrid(std::move(samples), uniform ? Layout::uniform : Layout::custom);
}

double TimeGrid::step() const {
  if (layout_ != Layout::uniform) throw DomainError("TimeGrid: grid is not uniform");
  return samples_[1];
}

std::string_view to_string(PropagatorMethod method) {
  switch (method) {
    case PropagatorMethod::volterra:
      return "volterra";
    case PropagatorMethod::laplace:
      return "laplace";
    case PropagatorMethod::markov:
      return "markov";
  }
  return "unknown";
}

std::vector<std::complex<double>> resample_cubic(const TimeGrid& source,
                                                 std::span<const std::complex<double>> values,
                                                 const TimeGrid& target) {
  const double h = source.step();
  const std::size_t n = source.size();
  if (values.size() != n) throw DomainError("resample_cubic: value count does not match grid");
  if (n < 4) throw DomainError("resample_cubic: need at least four source samples");
  if (target.t_max() > source.t_max() * (1.0 + 1e-12)) {
    throw DomainError("resample_cubic: target extends beyond the source grid");
  }

  std::vector<std::complex<double>> out(target.size());
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double t = target[k];
    // Stencil i0..i0+3 around t, clamped to the grid.
    auto cell = static_cast<std::ptrdiff_t>(std::floor(t / h));
    std::ptrdiff_t i0 = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
    const double x = t / h - static_cast<double>(i0);
    std::complex<double> acc = 0.0;
    for (int j = 0; j < 4; ++j) {
      double w = 1.0;
      for (int m = 0; m < 4; ++m) {
        if (m != j) w *= (x - m) / static_cast<double>(j - m);
      }
      acc += w * values[static_cast<std::size_t>(i0 + j)];
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace cohlab
