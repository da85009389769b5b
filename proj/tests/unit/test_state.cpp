#include <cmath>
#include <vector>

#include "doctest.h"
#include "morphoseek/state.hpp"
#include "support/oracles.hpp"

using namespace morphoseek;

TEST_CASE("flat ordering: zero field with tagged parameters") {
  StateVector s;
  s.dims = {1, 3, 3};
  s.ssh.assign(9, 0.0);
  s.dy = 1.0;
  s.dx = 1.0;
  s.G = 10.0;
  s.F = 2.0;
  const std::vector<double> flat = flatten(s);
  REQUIRE(flat.size() == 13);
  for (std::size_t k = 0; k < 9; ++k) CHECK(flat[k] == 0.0);
  CHECK(flat[9] == 1.0);
  CHECK(flat[10] == 1.0);
  CHECK(flat[11] == 10.0);
  CHECK(flat[12] == 2.0);
}

TEST_CASE("flat ordering: x is the fastest ssh axis") {
  StateVector s;
  s.dims = {1, 3, 3};
  s.ssh.assign(9, 0.0);
  s.ssh_at(0, 0, 1) = 1.0;
  const std::vector<double> flat = flatten(s);
  for (std::size_t k = 0; k < 9; ++k) CHECK(flat[k] == (k == 1 ? 1.0 : 0.0));
}

TEST_CASE("unflatten is the exact inverse of flatten") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const GridDims dims{1 + static_cast<int>(rng.index(3)), 3 + static_cast<int>(rng.index(4)),
                        3 + static_cast<int>(rng.index(4))};
    const StateVector s = random_state(dims, SamplingRanges{}, rng);
    const StateVector back = unflatten(flatten(s), dims);
    CHECK(back.dims == s.dims);
    CHECK(back.ssh == s.ssh);
    CHECK(back.dy == s.dy);
    CHECK(back.dx == s.dx);
    CHECK(back.G == s.G);
    CHECK(back.F == s.F);
  }
}

TEST_CASE("unflatten rejects wrong lengths") {
  const GridDims dims{1, 3, 3};
  std::vector<double> vec(dims.flat_size() - 1, 0.0);
  CHECK_THROWS_AS(unflatten(vec, dims), DimensionError);
  vec.assign(dims.flat_size() + 1, 0.0);
  CHECK_THROWS_AS(unflatten(vec, dims), DimensionError);
}

TEST_CASE("unflatten accepts F == 0 structurally but flags it for the kernel") {
  const GridDims dims{1, 3, 3};
  std::vector<double> vec(dims.flat_size(), 0.0);
  vec[dims.ssh_size() + kParamDy] = 1.0;
  vec[dims.ssh_size() + kParamDx] = 1.0;
  vec[dims.ssh_size() + kParamG] = 5.0;
  // F stays 0
  const StateVector s = unflatten(vec, dims);
  CHECK(s.F == 0.0);
  CHECK_FALSE(s.kernel_ready());
}

TEST_CASE("grid dims invariants") {
  CHECK_THROWS_AS((GridDims{0, 3, 3}.validate()), DimensionError);
  CHECK_THROWS_AS((GridDims{1, 2, 3}.validate()), DimensionError);
  CHECK_THROWS_AS((GridDims{1, 3, 2}.validate()), DimensionError);
  CHECK_NOTHROW((GridDims{1, 3, 3}.validate()));
}

TEST_CASE("norm basics") {
  CHECK(norm(std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
  CHECK(norm(std::vector<double>{3.0, 4.0}) == 5.0);
  CHECK_THROWS_AS(norm(std::vector<double>{1.0, std::nan("")}), NumericError);
}

TEST_CASE("norm matches the compensated-summation oracle") {
  Rng rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> vec(772);
    for (double& v : vec) v = rng.uniform(-10.0, 10.0);
    const double expected = morphoseek::test::compensated_norm(vec);
    CHECK(norm(vec) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("random_state is deterministic per seed") {
  const GridDims dims{2, 4, 4};
  Rng a(42), b(42), c(43);
  const StateVector sa = random_state(dims, SamplingRanges{}, a);
  const StateVector sb = random_state(dims, SamplingRanges{}, b);
  const StateVector sc = random_state(dims, SamplingRanges{}, c);
  CHECK(sa.ssh == sb.ssh);
  CHECK(sa.dy == sb.dy);
  CHECK(sa.F == sb.F);
  CHECK(sa.ssh != sc.ssh);
}

TEST_CASE("random_state respects the default ranges") {
  const GridDims dims{1, 3, 3};
  Rng rng(99);
  int negative_f = 0;
  for (int n = 0; n < 10000; ++n) {
    const StateVector s = random_state(dims, SamplingRanges{}, rng);
    CHECK(std::abs(s.F) >= 0.5);
    CHECK(std::abs(s.F) <= 2.0);
    CHECK(s.dy >= 0.5);
    CHECK(s.dy <= 2.0);
    CHECK(s.G >= 1.0);
    CHECK(s.G <= 20.0);
    if (s.F < 0.0) ++negative_f;
  }
  CHECK(negative_f > 4000);
  CHECK(negative_f < 6000);
}

TEST_CASE("random_state rejects invalid ranges") {
  const GridDims dims{1, 3, 3};
  Rng rng(1);
  SamplingRanges bad;
  bad.ssh_amplitude = 0.0;
  CHECK_THROWS_AS(random_state(dims, bad, rng), ConfigError);
  bad = SamplingRanges{};
  bad.spacing_min = -1.0;
  CHECK_THROWS_AS(random_state(dims, bad, rng), ConfigError);
  bad = SamplingRanges{};
  bad.f_mag_min = 0.0;
  CHECK_THROWS_AS(random_state(dims, bad, rng), ConfigError);
}
