#pragma once

#include <functional>
#include <string_view>

#include "morphoseek/state.hpp"

namespace morphoseek {

/// Implementation selector for the energy diagnostic.
enum class Kernel { Cyclic, NonCyclic };

std::string_view kernel_name(Kernel k);
Kernel parse_kernel(std::string_view name);  // throws ConfigError

/// Geostrophic surface velocities from sea level, centered differences with
/// cyclic index wrap on both axes:
///
///   u[t][j][i] = -(G/F) * (ssh[t][j+1][i] - ssh[t][j-1][i]) / (2*dy)
///   v[t][j][i] =  (G/F) * (ssh[t][j][i+1] - ssh[t][j][i-1]) / (2*dx)
///
/// Throws ParameterError when F == 0 or a spacing is nonpositive.
VelocityField velocities_cyclic(const StateVector& state);

/// The deliberately buggy variant: no index wrap. Interior cells match the
/// cyclic stencil; at the y edges a first-order one-sided difference
/// (ssh[1]-ssh[0])/dy is used, while at the x edges the centered stencil is
/// clamped to the array edge with the divisor left at 2*dx.
VelocityField velocities_noncyclic(const StateVector& state);

/// Kinetic energy time series: e(t) = mean over the slice of (u^2+v^2)/2.
/// The per-slice reduction runs in row-major order through an exact
/// accumulator, so e(t) is correctly rounded and invariant under any
/// permutation of the cell terms.
EnergySeries energy_cyclic(const StateVector& state);
EnergySeries energy_noncyclic(const StateVector& state);
EnergySeries energy(Kernel k, const StateVector& state);

/// The application under test as consumed by cost and search.
using EnergyFn = std::function<EnergySeries(const StateVector&)>;
EnergyFn energy_fn(Kernel k);

}  // namespace morphoseek
