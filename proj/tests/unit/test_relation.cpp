#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "morphoseek/kernel.hpp"
#include "morphoseek/relation.hpp"
#include "support/oracles.hpp"

using namespace morphoseek;
using morphoseek::test::dense_apply;
using morphoseek::test::dense_realization;
using morphoseek::test::spike_state;

namespace {

std::vector<double> random_flat(const GridDims& dims, Rng& rng) {
  std::vector<double> vec(dims.flat_size());
  for (double& v : vec) v = rng.uniform(-5.0, 5.0);
  return vec;
}

}  // namespace

TEST_CASE("identity maps every vector to itself") {
  const GridDims dims{2, 4, 4};
  Rng rng(77);
  for (const Space space : {Space::DenseAffine, Space::DiagonalAffine, Space::SignedPermScale}) {
    const AffineRelation id = identity(dims, space);
    const std::vector<double> zero(dims.flat_size(), 0.0);
    CHECK(morphoseek::apply(id, zero) == zero);
    const std::vector<double> v = random_flat(dims, rng);
    CHECK(morphoseek::apply(id, v) == v);
    CHECK(distance(id, id, v) == 0.0);
  }
}

TEST_CASE("negate_ssh flips the field and preserves parameters") {
  const StateVector s = spike_state();
  const std::vector<double> flat = flatten(s);
  const std::vector<double> out = morphoseek::apply(negate_ssh(s.dims), flat);
  REQUIRE(out.size() == flat.size());
  CHECK(out[0] == -1.0);
  for (std::size_t k = 1; k < s.dims.ssh_size(); ++k) CHECK(out[k] == 0.0);
  for (std::size_t k = s.dims.ssh_size(); k < flat.size(); ++k) CHECK(out[k] == flat[k]);
}

TEST_CASE("dense doubling relation doubles everything") {
  const StateVector s = spike_state();
  const GridDims dims = s.dims;
  AffineRelation twice = identity(dims, Space::DenseAffine);
  for (double& a : twice.alpha) a *= 2.0;
  const std::vector<double> flat = flatten(s);
  const std::vector<double> got = morphoseek::apply(twice, flat);
  const std::vector<double> expected = dense_apply(dense_realization(twice), flat);
  REQUIRE(got.size() == expected.size());
  for (std::size_t k = 0; k < got.size(); ++k) {
    CHECK(got[k] == doctest::Approx(2.0 * flat[k]).epsilon(1e-15));
    CHECK(got[k] == expected[k]);
  }
}

TEST_CASE("structured apply agrees with the dense matrix realization") {
  Rng rng(4242);
  for (const GridDims dims : {GridDims{1, 3, 3}, GridDims{2, 4, 4}}) {
    std::vector<AffineRelation> relations = known_symmetries(dims);
    relations.push_back(identity(dims, Space::DiagonalAffine));
    // a couple of random diagonal and perm relations with offsets
    AffineRelation diag = identity(dims, Space::DiagonalAffine);
    for (double& a : diag.alpha) a = rng.uniform(-2.0, 2.0);
    for (double& b : diag.beta) b = rng.uniform(-1.0, 1.0);
    relations.push_back(diag);
    AffineRelation perm = translate(dims, 1, 2);
    for (double& sc : perm.ssh_scale) sc = rng.bernoulli(0.5) ? -1.5 : 0.5;
    for (double& b : perm.beta) b = rng.uniform(-1.0, 1.0);
    relations.push_back(perm);

    for (const AffineRelation& rel : relations) {
      const auto dr = dense_realization(rel);
      for (int trial = 0; trial < 100; ++trial) {
        const std::vector<double> x = random_flat(dims, rng);
        const std::vector<double> got = morphoseek::apply(rel, x);
        const std::vector<double> expected = dense_apply(dr, x);
        double err = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < got.size(); ++k) {
          err += (got[k] - expected[k]) * (got[k] - expected[k]);
          scale += expected[k] * expected[k];
        }
        CHECK(std::sqrt(err) <= 1e-14 * std::max(1.0, std::sqrt(scale)));
      }
    }
  }
}

TEST_CASE("apply rejects wrong vector lengths") {
  const GridDims dims{1, 3, 3};
  const std::vector<double> bad(dims.flat_size() + 1, 0.0);
  CHECK_THROWS_AS(morphoseek::apply(identity(dims), bad), DimensionError);
}

TEST_CASE("catalogue relations leave the cyclic energy invariant") {
  const GridDims dims{3, 16, 16};
  Rng rng(555);
  const std::vector<AffineRelation> catalogue = known_symmetries(dims);
  REQUIRE(catalogue.size() == 10);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector s = random_state(dims, SamplingRanges{}, rng);
    const std::vector<double> flat = flatten(s);
    const EnergySeries base = energy_cyclic(s);
    for (const AffineRelation& rel : catalogue) {
      const StateVector image = unflatten(morphoseek::apply(rel, flat), dims);
      const EnergySeries got = energy_cyclic(image);
      const bool is_scale_gf = rel.meta.name && rel.meta.name->starts_with("scale_gf");
      for (std::size_t t = 0; t < got.size(); ++t) {
        if (is_scale_gf)
          CHECK(got[t] == doctest::Approx(base[t]).epsilon(1e-12));
        else
          CHECK(got[t] == base[t]);  // sign flips and permutations are exact
      }
    }
  }
}

TEST_CASE("under the noncyclic kernel, pointwise-linear symmetries hold and translation fails") {
  const GridDims dims{3, 16, 16};
  Rng rng(556);
  int translation_failures = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const StateVector s = random_state(dims, SamplingRanges{}, rng);
    const std::vector<double> flat = flatten(s);
    const EnergySeries base = energy_noncyclic(s);

    for (const AffineRelation& rel :
         {negate_ssh(dims), negate_g(dims), negate_f(dims), scale_gf(dims, 2.5)}) {
      const EnergySeries got = energy_noncyclic(unflatten(morphoseek::apply(rel, flat), dims));
      for (std::size_t t = 0; t < got.size(); ++t)
        CHECK(got[t] == doctest::Approx(base[t]).epsilon(1e-12));
    }

    const EnergySeries shifted =
        energy_noncyclic(unflatten(morphoseek::apply(translate(dims, 0, 1), flat), dims));
    double max_rel = 0.0;
    for (std::size_t t = 0; t < shifted.size(); ++t)
      max_rel = std::max(max_rel, std::abs(shifted[t] - base[t]) / std::abs(base[t]));
    if (max_rel > 1e-3) ++translation_failures;
  }
  CHECK(translation_failures == trials);
}

TEST_CASE("translate has cyclic group order NX along x") {
  const GridDims dims{1, 3, 5};
  Rng rng(60);
  const std::vector<double> v = random_flat(dims, rng);
  const AffineRelation step = translate(dims, 0, 1);
  std::vector<double> rolled = v;
  for (int n = 0; n < dims.nx; ++n) rolled = morphoseek::apply(step, rolled);
  CHECK(rolled == v);
}

TEST_CASE("negate_ssh is an involution") {
  const GridDims dims{1, 4, 4};
  Rng rng(61);
  const std::vector<double> v = random_flat(dims, rng);
  const AffineRelation rel = negate_ssh(dims);
  CHECK(morphoseek::apply(rel, morphoseek::apply(rel, v)) == v);
}

TEST_CASE("distance examples") {
  const StateVector s = spike_state();
  const std::vector<double> flat = flatten(s);
  const AffineRelation id = identity(s.dims);

  // spike moves one cell: the difference vector is {-1, +1}
  CHECK(distance(translate(s.dims, 0, 1), id, flat) == std::sqrt(2.0));

  // |(-ssh) - ssh| = 2 |ssh|
  Rng rng(62);
  const StateVector r = random_state(GridDims{2, 4, 4}, SamplingRanges{}, rng);
  const std::vector<double> rflat = flatten(r);
  const double ssh_norm = norm(std::span(rflat).first(r.dims.ssh_size()));
  CHECK(distance(negate_ssh(r.dims), identity(r.dims), rflat) ==
        doctest::Approx(2.0 * ssh_norm).epsilon(1e-15));

  CHECK_THROWS_AS(distance(id, identity(GridDims{1, 5, 5}), flat), DimensionError);
}

TEST_CASE("transpose_xy requires a square grid, scale_gf a nonzero factor") {
  CHECK_THROWS_AS(transpose_xy(GridDims{1, 3, 4}), DimensionError);
  CHECK_THROWS_AS(scale_gf(GridDims{1, 3, 3}, 0.0), ParameterError);
  const std::vector<AffineRelation> cat = known_symmetries(GridDims{1, 3, 4});
  for (const AffineRelation& rel : cat) CHECK(rel.meta.name != "transpose_xy");
  CHECK(cat.size() == 9);
}

TEST_CASE("transpose_xy swaps dy and dx") {
  const GridDims dims{1, 4, 4};
  StateVector s = spike_state();
  s.dy = 0.25;
  s.dx = 4.0;
  const std::vector<double> out = morphoseek::apply(transpose_xy(dims), flatten(s));
  const StateVector image = unflatten(out, dims);
  CHECK(image.dy == 4.0);
  CHECK(image.dx == 0.25);
  CHECK(image.ssh_at(0, 0, 0) == 1.0);
}

TEST_CASE("serialization round-trips every catalogue relation") {
  const GridDims dims{2, 4, 4};
  Rng rng(63);
  const std::vector<double> v = random_flat(dims, rng);
  for (const AffineRelation& rel : known_symmetries(dims)) {
    const std::string doc = serialize(rel);
    const AffineRelation back = deserialize(doc);
    CHECK(morphoseek::apply(back, v) == morphoseek::apply(rel, v));
    CHECK(serialize(back) == doc);
    CHECK(back.meta.name == rel.meta.name);
  }
}

TEST_CASE("serialization round-trips dense and diagonal relations exactly") {
  const GridDims dims{1, 3, 3};
  Rng rng(64);
  AffineRelation dense = identity(dims, Space::DenseAffine);
  for (double& a : dense.alpha) a = rng.uniform(-1.0, 1.0);
  for (double& b : dense.beta) b = rng.uniform(-1.0, 1.0);
  dense.meta.seed = 42;
  dense.meta.cost = 1.25e-13;
  dense.meta.iterations = 1000;

  const AffineRelation back = deserialize(serialize(dense));
  CHECK(back.alpha == dense.alpha);
  CHECK(back.beta == dense.beta);
  CHECK(back.meta.seed == dense.meta.seed);
  CHECK(back.meta.cost == dense.meta.cost);
  CHECK(back.meta.iterations == dense.meta.iterations);
}

TEST_CASE("deserialize rejects malformed documents") {
  const GridDims dims{1, 3, 3};
  const std::string good = serialize(identity(dims, Space::DenseAffine));

  CHECK_THROWS_AS(deserialize("not json at all"), FormatError);
  CHECK_THROWS_AS(deserialize(good.substr(0, good.size() / 2)), FormatError);
  CHECK_THROWS_AS(deserialize("{}"), FormatError);

  // wrong schema id
  std::string bad = good;
  const auto pos = bad.find("morphoseek-relation/1");
  bad.replace(pos, 21, "morphoseek-relation/9");
  CHECK_THROWS_AS(deserialize(bad), FormatError);

  // dense alpha length != D^2
  AffineRelation truncated = identity(dims, Space::DenseAffine);
  truncated.alpha.pop_back();
  CHECK_THROWS_AS(serialize(truncated), DimensionError);
  std::string doc = good;
  doc.replace(doc.find("\"alpha\":[1.0"), 12, "\"alpha\":[9.0,1.0");
  CHECK_THROWS_AS(deserialize(doc), FormatError);
}

TEST_CASE("relation validation catches broken permutations and zero scales") {
  const GridDims dims{1, 3, 3};
  AffineRelation rel = negate_y(dims);
  rel.ssh_perm[0] = rel.ssh_perm[1];
  CHECK_THROWS_AS(rel.validate(), ParameterError);

  rel = negate_g(dims);
  rel.param_scale[kParamG] = 0.0;
  CHECK_THROWS_AS(rel.validate(), ParameterError);

  rel = identity(dims, Space::DiagonalAffine);
  rel.alpha[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(rel.validate(), NumericError);
}
