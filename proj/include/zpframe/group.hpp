#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpframe/numtheory.hpp"
#include "zpframe/signal.hpp"

namespace zpframe {

/// An element (m, k) of the finite wavelet group W_p = U_p x Z_p with
/// group law (m, k) * (m', k') = (m*m', k + m*k').
struct GroupElement {
  int64_t m = 1;
  int64_t k = 0;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.m == b.m && a.k == b.k;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
};

inline GroupElement group_identity() { return {1, 0}; }

inline void require_element(const GroupElement& g, const PrimeContext& ctx, const char* where) {
  if (g.m < 1 || g.m > ctx.p - 1 || g.k < 0 || g.k > ctx.p - 1) {
    throw std::invalid_argument(std::string(where) + ": element out of range for p");
  }
}

inline GroupElement compose(const GroupElement& g, const GroupElement& h, const PrimeContext& ctx) {
  require_element(g, ctx, "compose");
  require_element(h, ctx, "compose");
  const int64_t p = ctx.p;
  return {g.m * h.m % p, (g.k + g.m * h.k) % p};
}

/// (m, k)^{-1} = (m_p, m_p * (p - k)).
inline GroupElement invert(const GroupElement& g, const PrimeContext& ctx) {
  require_element(g, ctx, "invert");
  const int64_t p = ctx.p;
  const int64_t m_inv = mod_inverse(g.m, ctx);
  return {m_inv, m_inv * ((p - g.k) % p) % p};
}

/// The unitary action sigma(m, k) y = T_k D_m y.
inline Signal act(const GroupElement& g, const Signal& y, const PrimeContext& ctx) {
  require_element(g, ctx, "act");
  return translate(dilate(y, g.m, ctx), g.k);
}

enum class IndexSetKind {
  Full,             // Delta = W_p, realized as the order-(p-1) subgroup product
  SubgroupProduct,  // Delta = M x Z_p
  Custom,           // explicit element list; coefficients only, no closed forms
};

/// A deterministic, duplicate-free enumeration of an index set Delta.
/// For subgroup products m runs outer in generator-power order and k runs
/// inner ascending, so coefficient layouts are reproducible run to run.
struct IndexSet {
  IndexSetKind kind = IndexSetKind::SubgroupProduct;
  SubgroupDecomposition sub;  // meaningful for Full / SubgroupProduct
  std::vector<GroupElement> elements;

  std::size_t size() const { return elements.size(); }
};

inline IndexSet enumerate_index_set(const PrimeContext& ctx, const SubgroupDecomposition& sub) {
  IndexSet set;
  set.kind = sub.order_M == ctx.p - 1 ? IndexSetKind::Full : IndexSetKind::SubgroupProduct;
  set.sub = sub;
  set.elements.reserve(static_cast<std::size_t>(sub.order_M * ctx.p));
  for (int64_t m : sub.elements) {
    for (int64_t k = 0; k < ctx.p; ++k) set.elements.push_back({m, k});
  }
  return set;
}

/// Delta = W_p; equivalent to the subgroup product with M = U_p.
inline IndexSet enumerate_full_index_set(const PrimeContext& ctx) {
  return enumerate_index_set(ctx, subgroup_of_order(ctx, ctx.p - 1));
}

/// Arbitrary Delta subset of W_p. Accepted by coefficient and frame-operator
/// computations; the closed-form spectrum and verdicts require Delta = M x Z_p.
inline IndexSet custom_index_set(const PrimeContext& ctx, std::vector<GroupElement> elements) {
  IndexSet set;
  set.kind = IndexSetKind::Custom;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    require_element(elements[i], ctx, "custom_index_set");
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (elements[i] == elements[j]) {
        throw std::invalid_argument("custom_index_set: duplicate (m, k) pair");
      }
    }
  }
  set.elements = std::move(elements);
  return set;
}

}  // namespace zpframe
