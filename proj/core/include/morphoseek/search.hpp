#pragma once

#include <cstdint>
#include <limits>

#include "morphoseek/cost.hpp"

namespace morphoseek {

/// Hyperparameters of the stochastic descent and the discovery loop.
struct SearchConfig {
  Space space = Space::DiagonalAffine;
  GridDims dims{2, 4, 4};
  int batch_size = 8;
  long max_iterations = 200000;   ///< mutation steps per descent
  double p_accept = 0.02;         ///< probability of keeping a non-improving step
  double sigma_init = 0.5;        ///< scale of the random initialization noise
  double sigma_mut = 0.1;         ///< initial mutation step scale
  double k_mut = 2.0;             ///< expected coordinates touched per mutation
  long stagnation_window = 5000;  ///< steps without improvement before sigma halves
  double sigma_floor = 1e-12;
  double epsilon_converge = 1e-10;  ///< cost declaring a minimum worth validating
  int max_relations = 4;
  int max_restarts = 50;
  std::uint64_t seed = 0;
  double structured_move_prob = 0.2;  ///< SignedPermScale swap/sign-flip moves
  SamplingRanges sampling{};
  ValidationOptions validation{};

  void validate() const;  // throws ConfigError
};

struct TracePoint {
  long iteration;
  double cost;
};

/// Best-so-far cost trajectory of one descent, subsampled; the recorded
/// costs are non-increasing.
struct DescentTrace {
  std::vector<TracePoint> points;
  long iterations = 0;
  double final_cost = std::numeric_limits<double>::infinity();
  bool converged = false;
};

struct SearchStats {
  int attempts = 0;
  int restarts = 0;          ///< attempts that did not record a relation
  long evaluations = 0;      ///< cost evaluations (one per batch)
  double wall_seconds = 0.0; ///< informational only; never serialized
};

struct SearchResult {
  std::vector<AffineRelation> relations;   ///< validated, meta filled
  std::vector<ValidationReport> reports;   ///< one per relation
  std::vector<DescentTrace> traces;        ///< one per attempt
  SearchStats stats;
};

/// Identity encoding of the space plus i.i.d. Gaussian(0, sigma_init) noise
/// on every coefficient (and on beta). sigma_init == 0 gives the identity.
AffineRelation init_params(Space space, const GridDims& dims, Rng& rng, double sigma_init);

/// A copy with K ~ Geometric(mean k_mut), K >= 1, coordinates perturbed by
/// Gaussian(0, sigma_mut) noise. With probability structured_move_prob the
/// copy additionally receives one discrete move: in SignedPermScale space a
/// swap of two permutation targets or a sign flip of one scale entry, in
/// the diagonal and dense spaces a sign flip of one diagonal coefficient.
/// The sign flips are what let a descent cross between the sign branches of
/// the invariance manifold; Gaussian steps alone cannot bridge them.
AffineRelation mutate(const AffineRelation& rel, Rng& rng, double sigma_mut, double k_mut,
                      double structured_move_prob = 0.2);

/// True when the proposal improves; otherwise true with probability
/// p_accept, except that +infinity proposals are always rejected.
bool accept(double cost_current, double cost_proposed, double p_accept, Rng& rng);

struct MinimizeOutcome {
  AffineRelation best;
  double best_cost = std::numeric_limits<double>::infinity();
  DescentTrace trace;
  long evaluations = 0;
};

/// One descent: draws a batch (fixed for the descent), initializes, then
/// runs mutate/accept steps against the batch cost, halving sigma after
/// each stagnation_window without improvement (down to sigma_floor) and
/// stopping early once the best cost drops below epsilon_converge. Returns
/// the best-so-far relation, not the last accepted one.
MinimizeOutcome minimize(const EnergyFn& f, std::span<const AffineRelation> priors,
                         const SearchConfig& config, Rng& rng);

/// The full discovery loop: descents against the prior set (identity plus
/// everything recorded so far), each converged candidate validated on fresh
/// holdout inputs and, if it passes, appended to the priors. Stops after
/// max_relations recorded or max_restarts failed attempts. Deterministic
/// given config.seed: attempt k draws its descent from
/// derive_stream(seed, 2k) and its holdout from derive_stream(seed, 2k+1).
SearchResult discover(const EnergyFn& f, const SearchConfig& config);

}  // namespace morphoseek
