#pragma once

#include "bjclass/classify.hpp"

namespace bjclass {

/// Block types available to the bounded enumeration, in canonical order
/// (size ascending, then real dimension).
[[nodiscard]] inline std::vector<BlockSpec> catalog_block_types(FieldTag field,
                                                                int max_dim) {
  std::vector<BlockSpec> types;
  const ScalarKind kinds[] = {ScalarKind::Real, ScalarKind::Complex,
                              ScalarKind::Quaternion};
  for (int n = 1; n * n <= max_dim; ++n)
    for (ScalarKind k : kinds) {
      if (field == FieldTag::Complex && k != ScalarKind::Complex) continue;
      if (real_dim(k) * n * n <= max_dim) types.push_back(BlockSpec{n, k});
    }
  return types;
}

namespace detail {

inline void enumerate_multisets(const std::vector<BlockSpec>& types,
                                std::size_t from, int budget,
                                std::vector<BlockSpec>& current, FieldTag field,
                                std::vector<AlgebraPtr>& out) {
  if (!current.empty()) {
    std::vector<BlockSpec> blocks = current;
    std::sort(blocks.begin(), blocks.end(),
              [](const BlockSpec& a, const BlockSpec& b) {
                return a.n != b.n ? a.n < b.n
                                  : real_dim(a.kind) < real_dim(b.kind);
              });
    out.push_back(make_algebra(field, blocks));
  }
  for (std::size_t i = from; i < types.size(); ++i) {
    const int cost = real_dim(types[i].kind) * types[i].n * types[i].n;
    if (cost > budget) continue;
    current.push_back(types[i]);
    enumerate_multisets(types, i, budget - cost, current, field, out);
    current.pop_back();
  }
}

}  // namespace detail

/// Every block multiset of real dimension at most `max_dim`, over both
/// fields, plus a handful of larger reference composites built around
/// M2(H) and M3(C).
[[nodiscard]] inline std::vector<AlgebraPtr> standard_catalog(
    int max_dim = 12, bool include_composites = true) {
  std::vector<AlgebraPtr> out;
  for (FieldTag field : {FieldTag::Real, FieldTag::Complex}) {
    std::vector<BlockSpec> current;
    detail::enumerate_multisets(catalog_block_types(field, max_dim), 0,
                                max_dim, current, field, out);
  }
  if (include_composites) {
    const BlockSpec r1{1, ScalarKind::Real};
    const BlockSpec c1{1, ScalarKind::Complex};
    const BlockSpec h1{1, ScalarKind::Quaternion};
    const BlockSpec m2h{2, ScalarKind::Quaternion};
    const BlockSpec m3c{3, ScalarKind::Complex};
    out.push_back(make_algebra(FieldTag::Real, {m2h}));
    out.push_back(make_algebra(FieldTag::Real, {r1, m2h}));
    out.push_back(make_algebra(FieldTag::Real, {c1, m2h}));
    out.push_back(make_algebra(FieldTag::Real, {h1, m2h}));
    out.push_back(make_algebra(FieldTag::Real, {m3c}));
    out.push_back(make_algebra(FieldTag::Real, {r1, m3c}));
    out.push_back(make_algebra(FieldTag::Real, {h1, m3c}));
    out.push_back(make_algebra(FieldTag::Complex, {m3c}));
    out.push_back(make_algebra(FieldTag::Complex, {c1, m3c}));
  }
  return out;
}

[[nodiscard]] inline std::vector<AlgebraPtr> pseudo_abelian_catalog(
    int max_dim = 12) {
  std::vector<AlgebraPtr> out;
  for (const AlgebraPtr& alg : standard_catalog(max_dim, false))
    if (alg->is_pseudo_abelian()) out.push_back(alg);
  return out;
}

}  // namespace bjclass
