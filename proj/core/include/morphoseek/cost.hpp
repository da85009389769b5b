#pragma once

#include <optional>
#include <span>

#include "morphoseek/kernel.hpp"
#include "morphoseek/relation.hpp"

namespace morphoseek {

/// Any squared distance to a prior below this threshold makes the cost
/// +infinity: a candidate that (nearly) duplicates a known relation is
/// maximally bad, not a division by zero. Value: 1e-12 * D.
double distance_guard(const GridDims& dims);

/// Minimum distance from every prior for a candidate to count as distinct
/// during validation. Value: 1e-6 * sqrt(D).
double default_delta_distinct(const GridDims& dims);

struct ValidationOptions {
  int n_holdout = 50;
  double tol_validate = 1e-8;
  /// default_delta_distinct(dims) when unset.
  std::optional<double> delta_distinct;
  SamplingRanges sampling{};
};

/// Held-out error statistics and prior distances for one candidate.
struct ValidationReport {
  double max_rel_err = 0.0;
  double mean_rel_err = 0.0;
  double min_prior_distance = 0.0;
  int n_inputs = 0;
  bool passed = false;
};

/// Cost of candidate g on one input X:
///
///   |f(g(X)) - f(X)|  /  prod_i |g(X) - g_i(X)|^2
///
/// over the priors g_i (priors[0] is the identity). Returns +infinity when
/// any squared prior distance falls below distance_guard, when g(X)
/// violates the kernel preconditions (F' == 0, nonpositive spacing), or
/// when f produces non-finite values. +infinity is a regular cost value;
/// dimension mismatches throw instead.
double cost_single(const AffineRelation& g, std::span<const AffineRelation> priors,
                   const StateVector& x, const EnergyFn& f);

/// Arithmetic mean of cost_single over the batch, accumulated in batch
/// order; +infinity is absorbing. Throws ConfigError on an empty batch.
double cost_batch(const AffineRelation& g, std::span<const AffineRelation> priors,
                  std::span<const StateVector> batch, const EnergyFn& f);

/// Checks a candidate on n_holdout fresh random inputs: relative invariance
/// error |f(g(X)) - f(X)| / (|f(X)| + 1e-12*T) plus the minimum distance to
/// every prior. passed == (max_rel_err < tol) && (min_prior_distance >
/// delta_distinct). Deterministic given the rng state.
ValidationReport validate(const AffineRelation& g, std::span<const AffineRelation> priors,
                          const EnergyFn& f, Rng& rng, const ValidationOptions& opts);

}  // namespace morphoseek
