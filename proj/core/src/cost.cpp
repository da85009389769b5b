#include "morphoseek/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace morphoseek {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

double series_diff_norm(const EnergySeries& a, const EnergySeries& b) {
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return norm(diff);
}

}  // namespace

double distance_guard(const GridDims& dims) {
  return 1e-12 * static_cast<double>(dims.flat_size());
}

double default_delta_distinct(const GridDims& dims) {
  return 1e-6 * std::sqrt(static_cast<double>(dims.flat_size()));
}

double cost_single(const AffineRelation& g, std::span<const AffineRelation> priors,
                   const StateVector& x, const EnergyFn& f) {
  if (priors.empty()) throw ConfigError("cost needs at least the identity prior");
  if (g.dims != x.dims) throw DimensionError("cost: candidate and state have different grids");
  for (const AffineRelation& prior : priors)
    if (prior.dims != g.dims)
      throw DimensionError("cost: prior and candidate have different grids");

  const std::vector<double> flat = flatten(x);
  const std::vector<double> transformed = morphoseek::apply(g, flat);

  const double guard = distance_guard(g.dims);
  double denominator = 1.0;
  for (const AffineRelation& prior : priors) {
    const std::vector<double> prior_image = morphoseek::apply(prior, flat);
    std::vector<double> diff(flat.size());
    for (std::size_t k = 0; k < flat.size(); ++k) diff[k] = transformed[k] - prior_image[k];
    if (!all_finite(diff)) return kInf;
    const double d = norm(diff);
    const double d2 = d * d;
    if (d2 < guard) return kInf;
    denominator *= d2;
  }

  if (!all_finite(transformed)) return kInf;
  const StateVector transformed_state = unflatten(transformed, x.dims);
  if (!transformed_state.kernel_ready()) return kInf;

  const EnergySeries base = f(x);
  const EnergySeries image = f(transformed_state);
  if (!all_finite(base) || !all_finite(image)) return kInf;

  const double numerator = series_diff_norm(image, base);
  const double cost = numerator / denominator;
  return std::isfinite(cost) ? cost : kInf;
}

double cost_batch(const AffineRelation& g, std::span<const AffineRelation> priors,
                  std::span<const StateVector> batch, const EnergyFn& f) {
  if (batch.empty()) throw ConfigError("cost_batch needs a nonempty batch");
  double sum = 0.0;
  for (const StateVector& x : batch) {
    const double c = cost_single(g, priors, x, f);
    if (std::isinf(c)) return kInf;
    sum += c;
  }
  return sum / static_cast<double>(batch.size());
}

ValidationReport validate(const AffineRelation& g, std::span<const AffineRelation> priors,
                          const EnergyFn& f, Rng& rng, const ValidationOptions& opts) {
  if (opts.n_holdout < 1) throw ConfigError("validation needs at least one holdout input");
  if (priors.empty()) throw ConfigError("validation needs at least the identity prior");
  opts.sampling.validate();

  const double delta =
      opts.delta_distinct ? *opts.delta_distinct : default_delta_distinct(g.dims);
  const double err_floor = 1e-12 * static_cast<double>(g.dims.t);

  ValidationReport report;
  report.n_inputs = opts.n_holdout;
  report.min_prior_distance = std::numeric_limits<double>::infinity();

  double err_sum = 0.0;
  for (int n = 0; n < opts.n_holdout; ++n) {
    const StateVector x = random_state(g.dims, opts.sampling, rng);
    const std::vector<double> flat = flatten(x);

    for (const AffineRelation& prior : priors) {
      const double d = distance(g, prior, flat);
      report.min_prior_distance = std::min(report.min_prior_distance, d);
    }

    double rel_err = kInf;
    const std::vector<double> transformed = morphoseek::apply(g, flat);
    if (all_finite(transformed)) {
      const StateVector transformed_state = unflatten(transformed, g.dims);
      if (transformed_state.kernel_ready()) {
        const EnergySeries base = f(x);
        const EnergySeries image = f(transformed_state);
        if (all_finite(base) && all_finite(image))
          rel_err = series_diff_norm(image, base) / (norm(base) + err_floor);
      }
    }
    report.max_rel_err = std::max(report.max_rel_err, rel_err);
    err_sum += rel_err;
  }
  report.mean_rel_err = err_sum / static_cast<double>(opts.n_holdout);
  report.passed =
      report.max_rel_err < opts.tol_validate && report.min_prior_distance > delta;
  return report;
}

}  // namespace morphoseek
