#include "morphoseek/relation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace morphoseek {

using ordered_json = nlohmann::ordered_json;

std::string_view space_name(Space space) {
  switch (space) {
    case Space::DenseAffine: return "dense";
    case Space::DiagonalAffine: return "diagonal";
    case Space::SignedPermScale: return "signed-perm-scale";
  }
  return "?";
}

Space parse_space(std::string_view name) {
  if (name == "dense") return Space::DenseAffine;
  if (name == "diagonal") return Space::DiagonalAffine;
  if (name == "signed-perm-scale") return Space::SignedPermScale;
  throw ConfigError("unknown parameter space '" + std::string(name) +
                    "' (expected dense|diagonal|signed-perm-scale)");
}

namespace {

void check_finite(std::span<const double> values, const char* what) {
  for (const double v : values)
    if (!std::isfinite(v)) throw NumericError(std::string(what) + " contains a non-finite value");
}

void check_bijection(std::span<const std::size_t> perm, std::size_t n, const char* what) {
  if (perm.size() != n)
    throw DimensionError(std::string(what) + " has " + std::to_string(perm.size()) +
                         " entries, expected " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (const std::size_t p : perm) {
    if (p >= n || seen[p])
      throw ParameterError(std::string(what) + " is not a bijection");
    seen[p] = true;
  }
}

}  // namespace

void AffineRelation::validate() const {
  dims.validate();
  const std::size_t d = dims.flat_size();
  const std::size_t d_ssh = dims.ssh_size();
  if (beta.size() != d)
    throw DimensionError("beta has " + std::to_string(beta.size()) + " entries, expected " +
                         std::to_string(d));
  check_finite(beta, "beta");
  switch (space) {
    case Space::DenseAffine:
      if (alpha.size() != d * d)
        throw DimensionError("dense alpha has " + std::to_string(alpha.size()) +
                             " entries, expected " + std::to_string(d * d));
      check_finite(alpha, "alpha");
      break;
    case Space::DiagonalAffine:
      if (alpha.size() != d)
        throw DimensionError("diagonal alpha has " + std::to_string(alpha.size()) +
                             " entries, expected " + std::to_string(d));
      check_finite(alpha, "alpha");
      break;
    case Space::SignedPermScale:
      if (!alpha.empty())
        throw DimensionError("signed-perm-scale relations carry no alpha array");
      check_bijection(ssh_perm, d_ssh, "ssh_perm");
      if (ssh_scale.size() != d_ssh)
        throw DimensionError("ssh_scale has " + std::to_string(ssh_scale.size()) +
                             " entries, expected " + std::to_string(d_ssh));
      check_finite(ssh_scale, "ssh_scale");
      check_bijection(param_perm, kParamCount, "param_perm");
      for (const double s : param_scale) {
        if (!std::isfinite(s)) throw NumericError("param_scale contains a non-finite value");
        if (s == 0.0) throw ParameterError("param_scale entries must be nonzero");
      }
      break;
  }
}

AffineRelation identity(const GridDims& dims, Space space) {
  dims.validate();
  AffineRelation rel;
  rel.dims = dims;
  rel.space = space;
  const std::size_t d = dims.flat_size();
  rel.beta.assign(d, 0.0);
  switch (space) {
    case Space::DenseAffine:
      rel.alpha.assign(d * d, 0.0);
      for (std::size_t k = 0; k < d; ++k) rel.alpha[k * d + k] = 1.0;
      break;
    case Space::DiagonalAffine:
      rel.alpha.assign(d, 1.0);
      break;
    case Space::SignedPermScale: {
      const std::size_t n = dims.ssh_size();
      rel.ssh_perm.resize(n);
      for (std::size_t k = 0; k < n; ++k) rel.ssh_perm[k] = k;
      rel.ssh_scale.assign(n, 1.0);
      break;
    }
  }
  rel.meta.name = "identity";
  return rel;
}

namespace {

AffineRelation perm_scale_base(const GridDims& dims, std::string name) {
  AffineRelation rel = identity(dims, Space::SignedPermScale);
  rel.meta.name = std::move(name);
  return rel;
}

}  // namespace

AffineRelation negate_ssh(const GridDims& dims) {
  AffineRelation rel = perm_scale_base(dims, "negate_ssh");
  std::fill(rel.ssh_scale.begin(), rel.ssh_scale.end(), -1.0);
  return rel;
}

AffineRelation negate_y(const GridDims& dims) {
  AffineRelation rel = perm_scale_base(dims, "negate_y");
  for (int t = 0; t < dims.t; ++t)
    for (int j = 0; j < dims.ny; ++j)
      for (int i = 0; i < dims.nx; ++i) {
        const std::size_t src = (static_cast<std::size_t>(t) * dims.ny + j) * dims.nx + i;
        const std::size_t tgt =
            (static_cast<std::size_t>(t) * dims.ny + (dims.ny - 1 - j)) * dims.nx + i;
        rel.ssh_perm[src] = tgt;
      }
  return rel;
}

AffineRelation negate_x(const GridDims& dims) {
  AffineRelation rel = perm_scale_base(dims, "negate_x");
  for (int t = 0; t < dims.t; ++t)
    for (int j = 0; j < dims.ny; ++j)
      for (int i = 0; i < dims.nx; ++i) {
        const std::size_t src = (static_cast<std::size_t>(t) * dims.ny + j) * dims.nx + i;
        const std::size_t tgt =
            (static_cast<std::size_t>(t) * dims.ny + j) * dims.nx + (dims.nx - 1 - i);
        rel.ssh_perm[src] = tgt;
      }
  return rel;
}

AffineRelation negate_g(const GridDims& dims) {
  AffineRelation rel = perm_scale_base(dims, "negate_G");
  rel.param_scale[kParamG] = -1.0;
  return rel;
}

AffineRelation negate_f(const GridDims& dims) {
  AffineRelation rel = perm_scale_base(dims, "negate_F");
  rel.param_scale[kParamF] = -1.0;
  return rel;
}

AffineRelation scale_gf(const GridDims& dims, double lambda) {
  if (lambda == 0.0) throw ParameterError("scale_gf requires a nonzero factor");
  AffineRelation rel = perm_scale_base(dims, "scale_gf(" + std::to_string(lambda) + ")");
  rel.param_scale[kParamG] = lambda;
  rel.param_scale[kParamF] = lambda;
  return rel;
}

AffineRelation translate(const GridDims& dims, int step_y, int step_x) {
  AffineRelation rel = perm_scale_base(
      dims, "translate(" + std::to_string(step_y) + "," + std::to_string(step_x) + ")");
  const auto wrap = [](int v, int n) { return ((v % n) + n) % n; };
  for (int t = 0; t < dims.t; ++t)
    for (int j = 0; j < dims.ny; ++j)
      for (int i = 0; i < dims.nx; ++i) {
        const std::size_t src = (static_cast<std::size_t>(t) * dims.ny + j) * dims.nx + i;
        const std::size_t tgt = (static_cast<std::size_t>(t) * dims.ny + wrap(j + step_y, dims.ny)) *
                                    dims.nx +
                                wrap(i + step_x, dims.nx);
        rel.ssh_perm[src] = tgt;
      }
  return rel;
}

AffineRelation transpose_xy(const GridDims& dims) {
  if (dims.ny != dims.nx)
    throw DimensionError("transpose_xy needs a square grid, got NY=" + std::to_string(dims.ny) +
                         " NX=" + std::to_string(dims.nx));
  AffineRelation rel = perm_scale_base(dims, "transpose_xy");
  for (int t = 0; t < dims.t; ++t)
    for (int j = 0; j < dims.ny; ++j)
      for (int i = 0; i < dims.nx; ++i) {
        const std::size_t src = (static_cast<std::size_t>(t) * dims.ny + j) * dims.nx + i;
        const std::size_t tgt = (static_cast<std::size_t>(t) * dims.ny + i) * dims.nx + j;
        rel.ssh_perm[src] = tgt;
      }
  rel.param_perm = {kParamDx, kParamDy, kParamG, kParamF};
  return rel;
}

std::vector<AffineRelation> known_symmetries(const GridDims& dims) {
  dims.validate();
  std::vector<AffineRelation> catalogue;
  catalogue.push_back(negate_ssh(dims));
  catalogue.push_back(negate_y(dims));
  catalogue.push_back(negate_x(dims));
  catalogue.push_back(negate_g(dims));
  catalogue.push_back(negate_f(dims));
  catalogue.push_back(scale_gf(dims, 2.5));
  catalogue.push_back(translate(dims, 0, 1));
  catalogue.push_back(translate(dims, 1, 0));
  catalogue.push_back(translate(dims, 3, 2));
  if (dims.ny == dims.nx) catalogue.push_back(transpose_xy(dims));
  return catalogue;
}

std::vector<double> apply(const AffineRelation& rel, std::span<const double> vec) {
  const std::size_t d = rel.dims.flat_size();
  if (vec.size() != d)
    throw DimensionError("apply: vector has " + std::to_string(vec.size()) +
                         " entries, relation expects " + std::to_string(d));
  std::vector<double> out(d);
  switch (rel.space) {
    case Space::DenseAffine:
      for (std::size_t k = 0; k < d; ++k) {
        const double* row = rel.alpha.data() + k * d;
        double acc = 0.0;
        for (std::size_t m = 0; m < d; ++m) acc += row[m] * vec[m];
        out[k] = acc + rel.beta[k];
      }
      break;
    case Space::DiagonalAffine:
      for (std::size_t k = 0; k < d; ++k) out[k] = rel.alpha[k] * vec[k] + rel.beta[k];
      break;
    case Space::SignedPermScale: {
      const std::size_t n = rel.dims.ssh_size();
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t tgt = rel.ssh_perm[k];
        out[tgt] = rel.ssh_scale[k] * vec[k] + rel.beta[tgt];
      }
      for (std::size_t p = 0; p < kParamCount; ++p) {
        const std::size_t tgt = n + rel.param_perm[p];
        out[tgt] = rel.param_scale[p] * vec[n + p] + rel.beta[tgt];
      }
      break;
    }
  }
  return out;
}

double distance(const AffineRelation& a, const AffineRelation& b, std::span<const double> vec) {
  if (a.dims != b.dims) throw DimensionError("distance: relations have different grids");
  const std::vector<double> ya = apply(a, vec);
  const std::vector<double> yb = apply(b, vec);
  std::vector<double> diff(ya.size());
  for (std::size_t k = 0; k < ya.size(); ++k) diff[k] = ya[k] - yb[k];
  return norm(diff);
}

namespace {

ordered_json meta_to_json(const RelationMeta& meta) {
  ordered_json j = ordered_json::object();
  if (meta.name) j["name"] = *meta.name;
  if (meta.seed) j["seed"] = *meta.seed;
  if (meta.cost) j["cost"] = *meta.cost;
  if (meta.iterations) j["iterations"] = *meta.iterations;
  return j;
}

template <typename T>
std::vector<T> array_field(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw FormatError(std::string("relation document: missing or non-array '") + key + "'");
  try {
    return j[key].get<std::vector<T>>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("relation document: '") + key + "' has entries of the wrong type");
  }
}

}  // namespace

std::string serialize(const AffineRelation& rel) {
  rel.validate();
  ordered_json doc;
  doc["schema"] = std::string(kRelationSchema);
  doc["dims"] = {{"T", rel.dims.t}, {"NY", rel.dims.ny}, {"NX", rel.dims.nx}};
  doc["space"] = std::string(space_name(rel.space));
  switch (rel.space) {
    case Space::DenseAffine:
    case Space::DiagonalAffine:
      doc["alpha"] = rel.alpha;
      break;
    case Space::SignedPermScale: {
      ordered_json alpha;
      alpha["ssh_perm"] = rel.ssh_perm;
      alpha["ssh_scale"] = rel.ssh_scale;
      alpha["param_scale"] = rel.param_scale;
      const std::array<std::size_t, kParamCount> id{0, 1, 2, 3};
      if (rel.param_perm != id) alpha["param_perm"] = rel.param_perm;
      doc["alpha"] = std::move(alpha);
      break;
    }
  }
  doc["beta"] = rel.beta;
  doc["meta"] = meta_to_json(rel.meta);
  return doc.dump();
}

AffineRelation deserialize(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("relation document: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("relation document: not a JSON object");
  if (!doc.contains("schema") || doc["schema"] != std::string(kRelationSchema))
    throw FormatError("relation document: unknown or missing schema (expected " +
                      std::string(kRelationSchema) + ")");
  if (!doc.contains("dims") || !doc["dims"].is_object())
    throw FormatError("relation document: missing 'dims'");

  AffineRelation rel;
  try {
    rel.dims.t = doc["dims"].at("T").get<int>();
    rel.dims.ny = doc["dims"].at("NY").get<int>();
    rel.dims.nx = doc["dims"].at("NX").get<int>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError("relation document: 'dims' needs integer T, NY, NX");
  }
  if (!doc.contains("space") || !doc["space"].is_string())
    throw FormatError("relation document: missing 'space'");
  try {
    rel.space = parse_space(doc["space"].get<std::string>());
  } catch (const ConfigError& e) {
    throw FormatError(std::string("relation document: ") + e.what());
  }

  switch (rel.space) {
    case Space::DenseAffine:
    case Space::DiagonalAffine:
      rel.alpha = array_field<double>(doc, "alpha");
      break;
    case Space::SignedPermScale: {
      if (!doc.contains("alpha") || !doc["alpha"].is_object())
        throw FormatError("relation document: signed-perm-scale 'alpha' must be an object");
      const ordered_json& alpha = doc["alpha"];
      rel.ssh_perm = array_field<std::size_t>(alpha, "ssh_perm");
      rel.ssh_scale = array_field<double>(alpha, "ssh_scale");
      const auto pscale = array_field<double>(alpha, "param_scale");
      if (pscale.size() != kParamCount)
        throw FormatError("relation document: 'param_scale' needs 4 entries");
      std::copy(pscale.begin(), pscale.end(), rel.param_scale.begin());
      if (alpha.contains("param_perm")) {
        const auto pperm = array_field<std::size_t>(alpha, "param_perm");
        if (pperm.size() != kParamCount)
          throw FormatError("relation document: 'param_perm' needs 4 entries");
        std::copy(pperm.begin(), pperm.end(), rel.param_perm.begin());
      }
      break;
    }
  }
  rel.beta = array_field<double>(doc, "beta");

  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw FormatError("relation document: 'meta' must be an object");
    const ordered_json& meta = doc["meta"];
    try {
      if (meta.contains("name")) rel.meta.name = meta["name"].get<std::string>();
      if (meta.contains("seed")) rel.meta.seed = meta["seed"].get<std::int64_t>();
      if (meta.contains("cost")) rel.meta.cost = meta["cost"].get<double>();
      if (meta.contains("iterations")) rel.meta.iterations = meta["iterations"].get<std::int64_t>();
    } catch (const nlohmann::json::exception&) {
      throw FormatError("relation document: 'meta' has fields of the wrong type");
    }
  }

  try {
    rel.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("relation document: ") + e.what());
  }
  return rel;
}

}  // namespace morphoseek
