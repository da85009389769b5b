#include "morphoseek/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace morphoseek {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

std::size_t coefficient_count(const AffineRelation& rel) {
  switch (rel.space) {
    case Space::DenseAffine:
      return rel.alpha.size() + rel.beta.size();
    case Space::DiagonalAffine:
      return rel.alpha.size() + rel.beta.size();
    case Space::SignedPermScale:
      return rel.ssh_scale.size() + kParamCount + rel.beta.size();
  }
  return 0;
}

double& coefficient(AffineRelation& rel, std::size_t idx) {
  switch (rel.space) {
    case Space::DenseAffine:
    case Space::DiagonalAffine:
      if (idx < rel.alpha.size()) return rel.alpha[idx];
      return rel.beta[idx - rel.alpha.size()];
    case Space::SignedPermScale:
      if (idx < rel.ssh_scale.size()) return rel.ssh_scale[idx];
      idx -= rel.ssh_scale.size();
      if (idx < kParamCount) return rel.param_scale[idx];
      return rel.beta[idx - kParamCount];
  }
  return rel.beta[0];  // unreachable
}

/// Batch cost of a candidate with the per-descent constants (flattened
/// states, base energies, prior images) computed once. Bit-identical to
/// cost_batch: same formulas, same evaluation order.
class BatchCost {
 public:
  BatchCost(const EnergyFn& f, std::span<const AffineRelation> priors,
            std::span<const StateVector> batch)
      : f_(f), batch_(batch), guard_(distance_guard(batch.front().dims)) {
    flats_.reserve(batch.size());
    bases_.reserve(batch.size());
    for (const StateVector& x : batch) {
      flats_.push_back(flatten(x));
      bases_.push_back(f(x));
    }
    prior_images_.resize(priors.size());
    for (std::size_t p = 0; p < priors.size(); ++p) {
      prior_images_[p].reserve(batch.size());
      for (const auto& flat : flats_)
        prior_images_[p].push_back(morphoseek::apply(priors[p], flat));
    }
  }

  double operator()(const AffineRelation& g) const {
    double sum = 0.0;
    for (std::size_t b = 0; b < batch_.size(); ++b) {
      const double c = single(g, b);
      if (std::isinf(c)) return kInf;
      sum += c;
    }
    return sum / static_cast<double>(batch_.size());
  }

 private:
  double single(const AffineRelation& g, std::size_t b) const {
    const std::vector<double>& flat = flats_[b];
    const std::vector<double> transformed = morphoseek::apply(g, flat);

    double denominator = 1.0;
    std::vector<double> diff(flat.size());
    for (const auto& images : prior_images_) {
      const std::vector<double>& prior_image = images[b];
      for (std::size_t k = 0; k < flat.size(); ++k) diff[k] = transformed[k] - prior_image[k];
      if (!all_finite(diff)) return kInf;
      const double d = norm(diff);
      const double d2 = d * d;
      if (d2 < guard_) return kInf;
      denominator *= d2;
    }

    if (!all_finite(transformed)) return kInf;
    const StateVector transformed_state = unflatten(transformed, batch_[b].dims);
    if (!transformed_state.kernel_ready()) return kInf;
    const EnergySeries image = f_(transformed_state);
    if (!all_finite(image)) return kInf;

    const EnergySeries& base = bases_[b];
    std::vector<double> ediff(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) ediff[i] = image[i] - base[i];
    const double numerator = norm(ediff);
    const double cost = numerator / denominator;
    return std::isfinite(cost) ? cost : kInf;
  }

  const EnergyFn& f_;
  std::span<const StateVector> batch_;
  double guard_;
  std::vector<std::vector<double>> flats_;
  std::vector<EnergySeries> bases_;
  std::vector<std::vector<std::vector<double>>> prior_images_;
};

}  // namespace

void SearchConfig::validate() const {
  dims.validate();
  sampling.validate();
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(p_accept >= 0.0 && p_accept <= 1.0)) throw ConfigError("p_accept must be in [0, 1]");
  if (!(sigma_init >= 0.0)) throw ConfigError("sigma_init must be >= 0");
  if (!(sigma_mut > 0.0)) throw ConfigError("sigma_mut must be > 0");
  if (!(k_mut >= 1.0)) throw ConfigError("k_mut must be >= 1");
  if (stagnation_window < 1) throw ConfigError("stagnation_window must be >= 1");
  if (!(sigma_floor > 0.0)) throw ConfigError("sigma_floor must be > 0");
  if (!(epsilon_converge > 0.0)) throw ConfigError("epsilon_converge must be > 0");
  if (max_relations < 0) throw ConfigError("max_relations must be >= 0");
  if (max_restarts < 1) throw ConfigError("max_restarts must be >= 1");
  if (!(structured_move_prob >= 0.0 && structured_move_prob <= 1.0))
    throw ConfigError("structured_move_prob must be in [0, 1]");
  if (validation.n_holdout < 1) throw ConfigError("n_holdout must be >= 1");
}

AffineRelation init_params(Space space, const GridDims& dims, Rng& rng, double sigma_init) {
  AffineRelation rel = identity(dims, space);
  rel.meta = RelationMeta{};
  if (sigma_init > 0.0) {
    switch (space) {
      case Space::DenseAffine:
      case Space::DiagonalAffine:
        for (double& a : rel.alpha) a += rng.normal(sigma_init);
        break;
      case Space::SignedPermScale:
        for (double& s : rel.ssh_scale) s += rng.normal(sigma_init);
        for (double& s : rel.param_scale) s += rng.normal(sigma_init);
        break;
    }
    for (double& b : rel.beta) b += rng.normal(sigma_init);
  }
  return rel;
}

AffineRelation mutate(const AffineRelation& rel, Rng& rng, double sigma_mut, double k_mut,
                      double structured_move_prob) {
  AffineRelation out = rel;
  const std::size_t n = coefficient_count(out);

  // K ~ Geometric(p = 1/k_mut), K >= 1, capped at the coordinate count
  const double p = 1.0 / k_mut;
  std::size_t k = 1;
  while (k < n && !rng.bernoulli(p)) ++k;

  for (std::size_t step = 0; step < k; ++step) {
    if (sigma_mut > 0.0) coefficient(out, rng.index(n)) += rng.normal(sigma_mut);
  }

  if (structured_move_prob > 0.0 && rng.bernoulli(structured_move_prob)) {
    switch (out.space) {
      case Space::SignedPermScale:
        if (rng.bernoulli(0.5)) {
          const std::size_t a = rng.index(out.ssh_perm.size());
          const std::size_t b = rng.index(out.ssh_perm.size());
          std::swap(out.ssh_perm[a], out.ssh_perm[b]);
        } else {
          const std::size_t idx = rng.index(out.ssh_scale.size() + kParamCount);
          if (idx < out.ssh_scale.size())
            out.ssh_scale[idx] = -out.ssh_scale[idx];
          else
            out.param_scale[idx - out.ssh_scale.size()] =
                -out.param_scale[idx - out.ssh_scale.size()];
        }
        break;
      case Space::DiagonalAffine: {
        const std::size_t d = out.dims.flat_size();
        const std::size_t idx = rng.index(d);
        out.alpha[idx] = -out.alpha[idx];
        break;
      }
      case Space::DenseAffine: {
        // flip one diagonal entry of the matrix
        const std::size_t d = out.dims.flat_size();
        const std::size_t idx = rng.index(d);
        out.alpha[idx * d + idx] = -out.alpha[idx * d + idx];
        break;
      }
    }
  }
  return out;
}

bool accept(double cost_current, double cost_proposed, double p_accept, Rng& rng) {
  if (cost_proposed < cost_current) return true;
  if (std::isinf(cost_proposed)) return false;
  return rng.bernoulli(p_accept);
}

namespace {

/// Records best-so-far improvements, thinning itself so traces stay small.
class TraceRecorder {
 public:
  void record(long iteration, double cost) {
    if (!std::isfinite(cost)) return;
    if (!points_.empty() && iteration < last_ + stride_) return;
    points_.push_back({iteration, cost});
    last_ = iteration;
    if (points_.size() > kMaxPoints) {
      std::vector<TracePoint> thinned;
      thinned.reserve(points_.size() / 2 + 1);
      for (std::size_t i = 0; i < points_.size(); i += 2) thinned.push_back(points_[i]);
      points_ = std::move(thinned);
      stride_ *= 2;
    }
  }

  std::vector<TracePoint> take() { return std::move(points_); }

 private:
  static constexpr std::size_t kMaxPoints = 2048;
  std::vector<TracePoint> points_;
  long last_ = 0;
  long stride_ = 1;
};

}  // namespace

MinimizeOutcome minimize(const EnergyFn& f, std::span<const AffineRelation> priors,
                         const SearchConfig& config, Rng& rng) {
  config.validate();
  if (priors.empty()) throw ConfigError("minimize needs at least the identity prior");

  std::vector<StateVector> batch;
  batch.reserve(config.batch_size);
  for (int b = 0; b < config.batch_size; ++b)
    batch.push_back(random_state(config.dims, config.sampling, rng));
  const BatchCost cost_of(f, priors, batch);

  AffineRelation current = init_params(config.space, config.dims, rng, config.sigma_init);
  double current_cost = cost_of(current);
  long evaluations = 1;

  MinimizeOutcome outcome;
  outcome.best = current;
  outcome.best_cost = current_cost;

  TraceRecorder recorder;
  recorder.record(0, current_cost);

  double sigma = config.sigma_mut;
  long since_improvement = 0;
  long iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    if (outcome.best_cost < config.epsilon_converge) break;

    AffineRelation proposal =
        mutate(current, rng, sigma, config.k_mut, config.structured_move_prob);
    const double proposal_cost = cost_of(proposal);
    ++evaluations;

    if (proposal_cost < outcome.best_cost) {
      outcome.best = proposal;
      outcome.best_cost = proposal_cost;
      since_improvement = 0;
      recorder.record(iter + 1, proposal_cost);
    } else {
      ++since_improvement;
    }

    if (accept(current_cost, proposal_cost, config.p_accept, rng)) {
      current = std::move(proposal);
      current_cost = proposal_cost;
    }

    if (since_improvement >= config.stagnation_window) {
      sigma = std::max(sigma / 2.0, config.sigma_floor);
      since_improvement = 0;
    }
  }

  outcome.evaluations = evaluations;
  outcome.trace.points = recorder.take();
  outcome.trace.iterations = iter;
  outcome.trace.final_cost = outcome.best_cost;
  outcome.trace.converged = outcome.best_cost < config.epsilon_converge;
  return outcome;
}

SearchResult discover(const EnergyFn& f, const SearchConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  SearchResult result;
  std::vector<AffineRelation> priors;
  priors.push_back(identity(config.dims));

  int attempt = 0;
  while (static_cast<int>(result.relations.size()) < config.max_relations &&
         result.stats.restarts < config.max_restarts) {
    const std::uint64_t descent_seed = derive_stream(config.seed, 2 * attempt);
    Rng descent_rng(descent_seed);
    Rng holdout_rng(derive_stream(config.seed, 2 * attempt + 1));

    MinimizeOutcome outcome = minimize(f, priors, config, descent_rng);
    result.stats.evaluations += outcome.evaluations;
    result.traces.push_back(outcome.trace);

    bool recorded = false;
    if (outcome.best_cost < config.epsilon_converge) {
      ValidationOptions opts = config.validation;
      opts.sampling = config.sampling;
      const ValidationReport report = validate(outcome.best, priors, f, holdout_rng, opts);
      if (report.passed) {
        AffineRelation rel = std::move(outcome.best);
        rel.meta.name = "discovered-" + std::to_string(result.relations.size());
        rel.meta.seed = static_cast<std::int64_t>(descent_seed);
        rel.meta.cost = outcome.best_cost;
        rel.meta.iterations = outcome.trace.iterations;
        result.reports.push_back(report);
        priors.push_back(rel);
        result.relations.push_back(std::move(rel));
        recorded = true;
      }
    }
    if (!recorded) ++result.stats.restarts;
    ++attempt;
  }

  result.stats.attempts = attempt;
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace morphoseek
