#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphoseek/state.hpp"

namespace morphoseek {

/// Parameter space of an affine relation. The structured spaces are small
/// enough to search at desk scale; DenseAffine keeps the full generality of
/// an arbitrary linear map.
enum class Space { DenseAffine, DiagonalAffine, SignedPermScale };

std::string_view space_name(Space space);       // "dense" | "diagonal" | "signed-perm-scale"
Space parse_space(std::string_view name);       // throws ConfigError

/// Provenance of a relation (catalogue name or discovery statistics).
struct RelationMeta {
  std::optional<std::string> name;
  std::optional<std::int64_t> seed;
  std::optional<double> cost;
  std::optional<std::int64_t> iterations;
};

/// A candidate or known transformation g of the flat state vector:
///
///   X'_k = sum_m alpha[k][m] * X_m + beta_k
///
/// with alpha encoded per space:
///   DenseAffine:     alpha holds the full D x D matrix, row-major.
///   DiagonalAffine:  alpha holds the D-entry diagonal.
///   SignedPermScale: ssh entry k feeds target index ssh_perm[k], scaled by
///                    ssh_scale[k]; the four parameter entries map through
///                    param_perm/param_scale the same way. param_perm is the
///                    identity except for relations that exchange dy and dx.
struct AffineRelation {
  GridDims dims;
  Space space = Space::DiagonalAffine;
  std::vector<double> alpha;                              ///< dense / diagonal encodings
  std::vector<std::size_t> ssh_perm;                      ///< SignedPermScale only
  std::vector<double> ssh_scale;                          ///< SignedPermScale only
  std::array<std::size_t, kParamCount> param_perm{0, 1, 2, 3};
  std::array<double, kParamCount> param_scale{1.0, 1.0, 1.0, 1.0};
  std::vector<double> beta;                               ///< length D
  RelationMeta meta;

  /// Structural invariants: encoding sizes match dims/space, permutations
  /// are bijections, scales nonzero, coefficients finite.
  void validate() const;  // throws DimensionError / ParameterError / NumericError
};

/// apply(identity(dims), v) == v for every v.
AffineRelation identity(const GridDims& dims, Space space = Space::DiagonalAffine);

// Known invariances of the cyclic kernel, one constructor each.
AffineRelation negate_ssh(const GridDims& dims);  ///< ssh -> -ssh
AffineRelation negate_y(const GridDims& dims);    ///< reverse ssh along y
AffineRelation negate_x(const GridDims& dims);    ///< reverse ssh along x
AffineRelation negate_g(const GridDims& dims);    ///< G -> -G
AffineRelation negate_f(const GridDims& dims);    ///< F -> -F
/// G -> lambda*G, F -> lambda*F; throws ParameterError when lambda == 0.
AffineRelation scale_gf(const GridDims& dims, double lambda);
/// Cyclic roll of ssh by integer steps along y and x.
AffineRelation translate(const GridDims& dims, int step_y, int step_x);
/// Swap the y and x axes of ssh and the dy/dx entries; requires NY == NX
/// (throws DimensionError otherwise).
AffineRelation transpose_xy(const GridDims& dims);

/// The full catalogue: sign changes of ssh, y, x, G, F; joint G/F scaling
/// (lambda = 2.5); translations (0,1), (1,0), (3,2); and, on square grids,
/// the transposition. The concrete scaling factor and translation steps are
/// representatives, nothing more.
std::vector<AffineRelation> known_symmetries(const GridDims& dims);

/// X' per the affine map. Structured encodings produce exactly what the
/// equivalent dense matrix would. Throws DimensionError on length mismatch.
std::vector<double> apply(const AffineRelation& rel, std::span<const double> vec);

/// norm(apply(a, vec) - apply(b, vec)).
double distance(const AffineRelation& a, const AffineRelation& b, std::span<const double> vec);

inline constexpr std::string_view kRelationSchema = "morphoseek-relation/1";

/// JSON document (schema morphoseek-relation/1). Numbers use shortest
/// round-trip decimals; deserialize(serialize(r)) reproduces the numeric
/// content exactly.
std::string serialize(const AffineRelation& rel);

/// Throws FormatError on malformed documents, unknown schema versions, or
/// encodings inconsistent with the declared dims.
AffineRelation deserialize(std::string_view text);

}  // namespace morphoseek
