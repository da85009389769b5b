#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "morphoseek/errors.hpp"
#include "morphoseek/rng.hpp"

namespace morphoseek {

/// Grid shape of the application state. The shape is fixed metadata: it is
/// not part of the flat state vector itself.
struct GridDims {
  int t = 1;   ///< time slices (>= 1)
  int ny = 3;  ///< grid points along y (>= 3, centered differences)
  int nx = 3;  ///< grid points along x (>= 3)

  bool operator==(const GridDims&) const = default;

  std::size_t cells() const { return static_cast<std::size_t>(ny) * nx; }
  std::size_t ssh_size() const { return static_cast<std::size_t>(t) * cells(); }
  /// Flat state-vector length D: T*NY*NX ssh entries plus dy, dx, G, F.
  std::size_t flat_size() const { return ssh_size() + 4; }

  void validate() const;  // throws DimensionError
};

/// Slots of the trailing parameter block of a flat state vector.
enum ParamIndex : std::size_t { kParamDy = 0, kParamDx = 1, kParamG = 2, kParamF = 3 };
inline constexpr std::size_t kParamCount = 4;

/// Full input of the energy kernel.
///
/// Flat ordering contract (normative -- relation files index into it):
/// ssh in row-major order with t slowest, then y, then x fastest, followed
/// by dy, dx, G, F in that order.
struct StateVector {
  GridDims dims;
  std::vector<double> ssh;  ///< dims.ssh_size() entries, meters
  double dy = 1.0;          ///< uniform y spacing, meters, > 0
  double dx = 1.0;          ///< uniform x spacing, meters, > 0
  double G = 1.0;           ///< gravity-like constant
  double F = 1.0;           ///< Coriolis-like constant, != 0

  std::size_t ssh_index(int t, int j, int i) const {
    return (static_cast<std::size_t>(t) * dims.ny + j) * dims.nx + i;
  }
  double ssh_at(int t, int j, int i) const { return ssh[ssh_index(t, j, i)]; }
  double& ssh_at(int t, int j, int i) { return ssh[ssh_index(t, j, i)]; }

  /// True when the kernel preconditions hold (F != 0, positive spacings).
  bool kernel_ready() const { return F != 0.0 && dy > 0.0 && dx > 0.0; }
};

/// Surface velocities derived from a state, same layout as its ssh field.
struct VelocityField {
  GridDims dims;
  std::vector<double> u;  ///< m/s
  std::vector<double> v;  ///< m/s
};

/// Kinetic energy per time slice, m^2/s^2; entry count == dims.t.
using EnergySeries = std::vector<double>;

/// Canonical flat encoding of a state; unflatten(flatten(s), s.dims) == s
/// exactly.
std::vector<double> flatten(const StateVector& state);

/// Inverse of flatten. Throws DimensionError when vec.size() != D(dims).
/// A structurally valid vector may still fail StateVector::kernel_ready()
/// (e.g. F == 0); that is reported by the kernel, not here.
StateVector unflatten(std::span<const double> vec, const GridDims& dims);

/// Euclidean norm. The sum of squares is accumulated exactly, so the result
/// is correctly rounded and independent of entry order. Throws NumericError
/// on non-finite entries.
double norm(std::span<const double> vec);

/// Ranges for random_state.
struct SamplingRanges {
  double ssh_amplitude = 1.0;  ///< ssh ~ U[-A, A]
  double spacing_min = 0.5;    ///< dy, dx ~ U[min, max], min > 0
  double spacing_max = 2.0;
  double g_min = 1.0;          ///< G ~ U[g_min, g_max]
  double g_max = 20.0;
  double f_mag_min = 0.5;      ///< |F| ~ U[min, max] with random sign; min > 0
  double f_mag_max = 2.0;

  void validate() const;  // throws ConfigError
};

/// Draws a random state. The draw order is fixed (ssh entries in flat
/// order, then dy, dx, G, then |F| and its sign), so a given rng state
/// always produces the same result.
StateVector random_state(const GridDims& dims, const SamplingRanges& ranges, Rng& rng);

}  // namespace morphoseek
