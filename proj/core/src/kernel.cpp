#include "morphoseek/kernel.hpp"

#include <string>

#include "morphoseek/summation.hpp"

namespace morphoseek {

std::string_view kernel_name(Kernel k) {
  return k == Kernel::Cyclic ? "cyclic" : "noncyclic";
}

Kernel parse_kernel(std::string_view name) {
  if (name == "cyclic") return Kernel::Cyclic;
  if (name == "noncyclic") return Kernel::NonCyclic;
  throw ConfigError("unknown kernel '" + std::string(name) + "' (expected cyclic|noncyclic)");
}

namespace {

void check_preconditions(const StateVector& state) {
  state.dims.validate();
  if (state.F == 0.0) throw ParameterError("kernel requires F != 0");
  if (!(state.dy > 0.0) || !(state.dx > 0.0))
    throw ParameterError("kernel requires positive grid spacings");
}

// The u/v expression trees are kept identical up to the leading sign so
// that reflections and transposition map velocity values onto each other
// bit for bit.
VelocityField velocities(const StateVector& state, bool cyclic) {
  check_preconditions(state);
  const GridDims d = state.dims;
  VelocityField field;
  field.dims = d;
  field.u.resize(d.ssh_size());
  field.v.resize(d.ssh_size());
  const double ratio = state.G / state.F;

  for (int t = 0; t < d.t; ++t) {
    for (int j = 0; j < d.ny; ++j) {
      for (int i = 0; i < d.nx; ++i) {
        const std::size_t k = state.ssh_index(t, j, i);
        double du;  // y-difference term feeding u
        if (cyclic) {
          const int jp = (j + 1) % d.ny;
          const int jm = (j + d.ny - 1) % d.ny;
          du = (state.ssh_at(t, jp, i) - state.ssh_at(t, jm, i)) / (2.0 * state.dy);
        } else if (j == 0) {
          du = (state.ssh_at(t, 1, i) - state.ssh_at(t, 0, i)) / state.dy;
        } else if (j == d.ny - 1) {
          du = (state.ssh_at(t, d.ny - 1, i) - state.ssh_at(t, d.ny - 2, i)) / state.dy;
        } else {
          du = (state.ssh_at(t, j + 1, i) - state.ssh_at(t, j - 1, i)) / (2.0 * state.dy);
        }
        field.u[k] = -(ratio * du);

        double dv;  // x-difference term feeding v
        if (cyclic) {
          const int ip = (i + 1) % d.nx;
          const int im = (i + d.nx - 1) % d.nx;
          dv = (state.ssh_at(t, j, ip) - state.ssh_at(t, j, im)) / (2.0 * state.dx);
        } else {
          // clamped centered stencil: the wrap is simply dropped, the
          // divisor stays 2*dx
          const int ip = i == d.nx - 1 ? d.nx - 1 : i + 1;
          const int im = i == 0 ? 0 : i - 1;
          dv = (state.ssh_at(t, j, ip) - state.ssh_at(t, j, im)) / (2.0 * state.dx);
        }
        field.v[k] = ratio * dv;
      }
    }
  }
  return field;
}

EnergySeries energy_impl(const StateVector& state, bool cyclic) {
  const VelocityField field = velocities(state, cyclic);
  const GridDims d = state.dims;
  EnergySeries series(d.t);
  const double cells = static_cast<double>(d.cells());
  for (int t = 0; t < d.t; ++t) {
    ExactSum acc;
    const std::size_t base = static_cast<std::size_t>(t) * d.cells();
    for (std::size_t c = 0; c < d.cells(); ++c) {
      const double u = field.u[base + c];
      const double v = field.v[base + c];
      acc.add(u * u + v * v);
    }
    series[t] = 0.5 * (acc.result() / cells);
  }
  return series;
}

}  // namespace

VelocityField velocities_cyclic(const StateVector& state) { return velocities(state, true); }

VelocityField velocities_noncyclic(const StateVector& state) {
  return velocities(state, false);
}

EnergySeries energy_cyclic(const StateVector& state) { return energy_impl(state, true); }

EnergySeries energy_noncyclic(const StateVector& state) { return energy_impl(state, false); }

EnergySeries energy(Kernel k, const StateVector& state) {
  return k == Kernel::Cyclic ? energy_cyclic(state) : energy_noncyclic(state);
}

EnergyFn energy_fn(Kernel k) {
  return k == Kernel::Cyclic ? EnergyFn(&energy_cyclic) : EnergyFn(&energy_noncyclic);
}

}  // namespace morphoseek
