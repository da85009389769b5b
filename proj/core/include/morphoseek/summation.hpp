#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "morphoseek/errors.hpp"

namespace morphoseek {

/// Exact floating-point accumulator (expansion arithmetic after Shewchuk).
///
/// The running total is kept as a list of non-overlapping doubles whose
/// exact sum equals the exact sum of every value added. result() compresses
/// the expansion and returns the correctly rounded total, which therefore
/// does not depend on the order in which terms were added. This is what
/// makes the energy reduction invariant under permutations of its terms.
///
/// Non-finite input poisons the accumulator; result() then returns the
/// (non-finite) poison value.
class ExactSum {
 public:
  void add(double x) {
    if (!std::isfinite(x) || poisoned_) {
      poison_ = poisoned_ ? poison_ + x : approximate() + x;
      poisoned_ = true;
      return;
    }
    // grow-expansion with zero elimination; comps_ stays non-overlapping,
    // ordered by increasing magnitude
    double q = x;
    std::size_t out = 0;
    for (std::size_t i = 0; i < size_; ++i) {
      const double c = comps_[i];
      const double s = q + c;
      const double bvirt = s - q;
      const double avirt = s - bvirt;
      const double broundoff = c - bvirt;
      const double aroundoff = q - avirt;
      const double err = aroundoff + broundoff;
      if (err != 0.0) comps_[out++] = err;
      q = s;
    }
    if (q != 0.0 || out == 0) {
      if (out >= kCapacity) throw NumericError("exact sum expansion overflow");
      comps_[out++] = q;
    }
    size_ = out;
  }

  /// Correctly rounded value of the exact running sum.
  double result() const;

  void reset() {
    size_ = 0;
    poisoned_ = false;
    poison_ = 0.0;
  }

 private:
  static constexpr std::size_t kCapacity = 48;

  double approximate() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size_; ++i) s += comps_[i];
    return s;
  }

  std::array<double, kCapacity> comps_{};
  std::size_t size_ = 0;
  bool poisoned_ = false;
  double poison_ = 0.0;
};

/// Correctly rounded sum of a range, independent of element order.
double exact_sum(std::span<const double> values);

}  // namespace morphoseek
