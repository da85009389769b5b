#include "morphoseek/state.hpp"

#include <cmath>
#include <string>

#include "morphoseek/summation.hpp"

namespace morphoseek {

void GridDims::validate() const {
  if (t < 1)
    throw DimensionError("grid needs at least one time slice, got T=" + std::to_string(t));
  if (ny < 3 || nx < 3)
    throw DimensionError("centered differences need at least 3 points per axis, got NY=" +
                         std::to_string(ny) + " NX=" + std::to_string(nx));
}

std::vector<double> flatten(const StateVector& state) {
  std::vector<double> flat;
  flat.reserve(state.dims.flat_size());
  flat.insert(flat.end(), state.ssh.begin(), state.ssh.end());
  flat.push_back(state.dy);
  flat.push_back(state.dx);
  flat.push_back(state.G);
  flat.push_back(state.F);
  return flat;
}

StateVector unflatten(std::span<const double> vec, const GridDims& dims) {
  dims.validate();
  if (vec.size() != dims.flat_size())
    throw DimensionError("flat vector has " + std::to_string(vec.size()) +
                         " entries, grid needs " + std::to_string(dims.flat_size()));
  StateVector state;
  state.dims = dims;
  const std::size_t n = dims.ssh_size();
  state.ssh.assign(vec.begin(), vec.begin() + n);
  state.dy = vec[n + kParamDy];
  state.dx = vec[n + kParamDx];
  state.G = vec[n + kParamG];
  state.F = vec[n + kParamF];
  return state;
}

double norm(std::span<const double> vec) {
  ExactSum acc;
  for (const double x : vec) {
    if (!std::isfinite(x)) throw NumericError("norm of a vector with a non-finite entry");
    acc.add(x * x);
  }
  return std::sqrt(acc.result());
}

void SamplingRanges::validate() const {
  if (!(ssh_amplitude > 0.0))
    throw ConfigError("ssh amplitude must be positive");
  if (!(spacing_min > 0.0) || !(spacing_max >= spacing_min))
    throw ConfigError("spacing range must satisfy 0 < min <= max");
  if (!(g_max >= g_min)) throw ConfigError("G range must satisfy min <= max");
  if (!(f_mag_min > 0.0) || !(f_mag_max >= f_mag_min))
    throw ConfigError("F magnitude range must satisfy 0 < min <= max");
}

StateVector random_state(const GridDims& dims, const SamplingRanges& ranges, Rng& rng) {
  dims.validate();
  ranges.validate();
  StateVector state;
  state.dims = dims;
  state.ssh.resize(dims.ssh_size());
  for (double& s : state.ssh)
    s = rng.uniform(-ranges.ssh_amplitude, ranges.ssh_amplitude);
  state.dy = rng.uniform(ranges.spacing_min, ranges.spacing_max);
  state.dx = rng.uniform(ranges.spacing_min, ranges.spacing_max);
  state.G = rng.uniform(ranges.g_min, ranges.g_max);
  const double f_mag = rng.uniform(ranges.f_mag_min, ranges.f_mag_max);
  state.F = rng.bernoulli(0.5) ? -f_mag : f_mag;
  return state;
}

}  // namespace morphoseek
