#pragma once

#include <json.hpp>

#include "bjclass/classify.hpp"

namespace bjclass {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars: real -> number, complex -> [re, im], quaternion -> [w, x, y, z].
// ---------------------------------------------------------------------------

[[nodiscard]] inline json to_json(const Scalar& s) {
  switch (s.kind) {
    case ScalarKind::Real:
      return s.w;
    case ScalarKind::Complex:
      return json::array({s.w, s.x});
    default:
      return json::array({s.w, s.x, s.y, s.z});
  }
}

[[nodiscard]] inline Scalar scalar_from_json(const json& j, ScalarKind kind) {
  if (j.is_number()) {
    if (kind != ScalarKind::Real)
      throw Error("scalar JSON: bare number in a non-real block");
    return Scalar::real(j.get<double>());
  }
  if (!j.is_array()) throw Error("scalar JSON: expected number or array");
  const std::size_t want = kind == ScalarKind::Complex ? 2 : 4;
  if (kind == ScalarKind::Real || j.size() != want)
    throw Error("scalar JSON: coordinate count does not match block kind");
  Scalar s = Scalar::zero(kind);
  s.w = j[0].get<double>();
  s.x = j[1].get<double>();
  if (kind == ScalarKind::Quaternion) {
    s.y = j[2].get<double>();
    s.z = j[3].get<double>();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Algebra descriptors: {"field":"R","blocks":[{"n":1,"k":"R"},...]}.
// ---------------------------------------------------------------------------

[[nodiscard]] inline json to_json(const AlgebraDescriptor& alg) {
  json blocks = json::array();
  for (const BlockSpec& b : alg.blocks())
    blocks.push_back({{"n", b.n}, {"k", to_string(b.kind)}});
  return {{"field", to_string(alg.field())}, {"blocks", blocks}};
}

[[nodiscard]] inline ScalarKind kind_from_string(const std::string& s) {
  if (s == "R") return ScalarKind::Real;
  if (s == "C") return ScalarKind::Complex;
  if (s == "H") return ScalarKind::Quaternion;
  throw Error("unknown block kind '" + s + "'");
}

[[nodiscard]] inline AlgebraPtr algebra_from_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("blocks"))
    throw Error("algebra JSON: expected {field, blocks}");
  const std::string f = j["field"].get<std::string>();
  if (f != "R" && f != "C") throw Error("algebra JSON: field must be R or C");
  std::vector<BlockSpec> blocks;
  for (const json& b : j["blocks"])
    blocks.push_back(
        BlockSpec{b.at("n").get<int>(), kind_from_string(b.at("k"))});
  return make_algebra(f == "R" ? FieldTag::Real : FieldTag::Complex, blocks);
}

/// Accepts either the text grammar or the JSON mirror.
[[nodiscard]] inline AlgebraPtr parse_algebra(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return algebra_from_json(json::parse(text));
  return parse_algebra_text(text);
}

// ---------------------------------------------------------------------------
// Elements: a list of flat row-major matrices, entries encoded as scalars.
// ---------------------------------------------------------------------------

[[nodiscard]] inline json to_json(const Element& e) {
  json blocks = json::array();
  for (const KMatrix& b : e.blocks) {
    json m = json::array();
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m.push_back(to_json(b.at(i, j)));
    blocks.push_back(std::move(m));
  }
  return blocks;
}

[[nodiscard]] inline Element element_from_json(const AlgebraPtr& alg,
                                               const json& j) {
  if (!j.is_array() ||
      j.size() != static_cast<std::size_t>(alg->block_count()))
    throw Error("element JSON: expected one matrix per block");
  Element e(alg);
  for (int k = 0; k < alg->block_count(); ++k) {
    const BlockSpec& spec = alg->blocks()[static_cast<std::size_t>(k)];
    const json& m = j[static_cast<std::size_t>(k)];
    if (!m.is_array() ||
        m.size() != static_cast<std::size_t>(spec.n) * spec.n)
      throw Error("element JSON: block " + std::to_string(k) +
                  " needs " + std::to_string(spec.n * spec.n) +
                  " row-major entries");
    for (int i = 0; i < spec.n; ++i)
      for (int c = 0; c < spec.n; ++c)
        e.blocks[static_cast<std::size_t>(k)].at(i, c) = scalar_from_json(
            m[static_cast<std::size_t>(i * spec.n + c)], spec.kind);
  }
  return e;
}

[[nodiscard]] inline json to_json(const BlockVector& v) {
  json blocks = json::array();
  for (const KMatrix& b : v.blocks) {
    json col = json::array();
    for (int i = 0; i < b.rows(); ++i) col.push_back(to_json(b.at(i, 0)));
    blocks.push_back(std::move(col));
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Results.
// ---------------------------------------------------------------------------

[[nodiscard]] inline json to_json(const OrthWitness& w) {
  switch (w.kind) {
    case OrthWitness::Kind::Vector:
      return {{"kind", "vector"},
              {"vector", to_json(w.x)},
              {"residual", w.residual}};
    case OrthWitness::Kind::MinimizingScalar:
      return {{"kind", "minimizing_scalar"},
              {"lambda", to_json(w.lambda_star)},
              {"residual", w.residual}};
    default:
      return {{"kind", "none"}, {"residual", w.residual}};
  }
}

[[nodiscard]] inline json to_json(const OrthResult& r) {
  return {{"orthogonal", r.orthogonal}, {"witness", to_json(r.witness)}};
}

[[nodiscard]] inline std::string to_string(SymmetryMode m) {
  switch (m) {
    case SymmetryMode::Structural: return "structural";
    case SymmetryMode::OracleSampled: return "sampled";
    default: return "both";
  }
}

[[nodiscard]] inline json to_json(const SymmetryVerdict& v) {
  json j{{"left", v.left},
         {"right", v.right},
         {"smooth", v.smooth},
         {"mode", to_string(v.mode)},
         {"trials", v.trials},
         {"modes_agree", v.modes_agree}};
  if (v.counterexample) j["counterexample"] = to_json(*v.counterexample);
  return j;
}

[[nodiscard]] inline json to_json(const Subspace& s) {
  json basis = json::array();
  for (int i = 0; i < s.dim(); ++i) basis.push_back(to_json(s.element(i)));
  return {{"dim", s.dim()},
          {"block_dims", s.block_dims()},
          {"basis", std::move(basis)}};
}

[[nodiscard]] inline json to_json(const ClassificationReport& r) {
  json j{{"field", r.field_undecidable ? "undecidable" : to_string(r.field)},
         {"ell", r.ell},
         {"s", r.s},
         {"dim", r.dim},
         {"r", r.r},
         {"c", r.c},
         {"h", r.h},
         {"provenance", r.provenance == Provenance::Structural
                            ? "structural"
                            : "bj_procedure"},
         {"pseudo_abelian", to_json(r.pseudo)},
         {"nonpseudo_abelian", to_json(r.nonpseudo)},
         {"abelian", to_json(r.abelian)}};
  json big = json::array();
  for (const BlockSpec& b : r.nonpseudo_blocks)
    big.push_back({{"n", b.n}, {"k", to_string(b.kind)}});
  j["nonpseudo_blocks"] = std::move(big);
  return j;
}

}  // namespace bjclass
