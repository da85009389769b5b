#include "morphoseek/summation.hpp"

namespace morphoseek {

double ExactSum::result() const {
  if (poisoned_) return poison_;
  if (size_ == 0) return 0.0;

  // COMPRESS (Shewchuk): after the two passes the final carry is the top
  // component of the compressed expansion and lies within half an ulp of
  // the exact sum, i.e. it is the correctly rounded value.
  std::array<double, kCapacity> g{};
  for (std::size_t i = 0; i < size_; ++i) g[i] = comps_[i];

  // downward pass, largest component first
  double q = g[size_ - 1];
  std::size_t bottom = size_ - 1;
  for (std::size_t i = size_ - 1; i-- > 0;) {
    // fast-two-sum(q, g[i]); |q| >= |g[i]| holds along this sweep
    const double s = q + g[i];
    const double err = g[i] - (s - q);
    if (err != 0.0) {
      g[bottom--] = s;
      q = err;
    } else {
      q = s;
    }
  }
  g[bottom] = q;

  // upward pass, folding the small components back in
  double top = g[bottom];
  for (std::size_t i = bottom + 1; i < size_; ++i) {
    top = g[i] + top;
  }
  return top;
}

double exact_sum(std::span<const double> values) {
  ExactSum acc;
  for (const double v : values) acc.add(v);
  return acc.result();
}

}  // namespace morphoseek
