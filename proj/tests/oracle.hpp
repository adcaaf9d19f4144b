#pragma once

// Brute-force reference computations. They read presheaves only through
// size/act and never call the library's search or colimit code.

#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "lfp/colimit.hpp"
#include "lfp/kan.hpp"

namespace oracle {

using lfp::Elem;
using lfp::MorId;
using lfp::ObjId;
using Comps = std::vector<std::vector<Elem>>;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) n += find(i) == i;
    return n;
  }
};

inline std::size_t objects(const lfp::Presheaf& x) { return x.index().num_objects(); }

inline bool natural(const lfp::Presheaf& x, const lfp::Presheaf& y, const Comps& t) {
  const auto& c = x.index();
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto m = static_cast<MorId>(f);
    for (Elem e = 0; e < static_cast<Elem>(x.size(c.dom(m))); ++e)
      if (y.act(m, t[c.dom(m)][e]) != t[c.cod(m)][x.act(m, e)]) return false;
  }
  return true;
}

/// Every natural transformation by odometer over all componentwise functions.
inline std::vector<Comps> homs(const lfp::Presheaf& x, const lfp::Presheaf& y) {
  std::vector<Comps> out;
  const std::size_t n = objects(x);
  Comps t(n);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 0; a < n; ++a) {
    t[a].assign(x.size(static_cast<ObjId>(a)), 0);
    if (x.size(static_cast<ObjId>(a)) && !y.size(static_cast<ObjId>(a))) return out;
    for (std::size_t e = 0; e < t[a].size(); ++e) slots.push_back({a, e});
  }
  while (true) {
    if (natural(x, y, t)) out.push_back(t);
    std::size_t i = 0;
    for (; i < slots.size(); ++i) {
      auto [a, e] = slots[i];
      if (++t[a][e] < static_cast<Elem>(y.size(static_cast<ObjId>(a)))) break;
      t[a][e] = 0;
    }
    if (i == slots.size()) return out;
  }
}

inline Comps compose(const Comps& g, const Comps& f) {
  Comps out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a)
    for (Elem e : f[a]) out[a].push_back(g[a][e]);
  return out;
}

inline bool bijective(const lfp::Presheaf& y, const Comps& t) {
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (t[a].size() != y.size(static_cast<ObjId>(a))) return false;
    std::vector<char> hit(t[a].size(), 0);
    for (Elem v : t[a]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
  }
  return true;
}

inline bool isomorphic(const lfp::Presheaf& x, const lfp::Presheaf& y) {
  for (std::size_t a = 0; a < objects(x); ++a)
    if (x.size(static_cast<ObjId>(a)) != y.size(static_cast<ObjId>(a))) return false;
  for (const auto& t : homs(x, y))
    if (bijective(y, t)) return true;
  return false;
}

/// Isomorphism commuting with given arrows from a common source.
inline bool isomorphic_under(const lfp::NatTrans& f, const lfp::NatTrans& g) {
  const auto& x = f.target();
  const auto& y = g.target();
  for (std::size_t a = 0; a < objects(x); ++a)
    if (x.size(static_cast<ObjId>(a)) != y.size(static_cast<ObjId>(a))) return false;
  for (const auto& t : homs(x, y))
    if (bijective(y, t) && compose(t, f.components()) == g.components()) return true;
  return false;
}

/// Carrier sizes of the colimit of a diagram, by union-find on the disjoint union.
inline std::vector<std::size_t> colimit_sizes(const lfp::Diagram& d) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < d.index.num_objects(); ++a) {
    auto oa = static_cast<ObjId>(a);
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (const auto& x : d.objects) {
      offset.push_back(total);
      total += x.size(oa);
    }
    UnionFind uf(total);
    for (std::size_t f = 0; f < d.shape.num_morphisms(); ++f) {
      auto m = static_cast<MorId>(f);
      auto i = static_cast<std::size_t>(d.shape.dom(m)), j = static_cast<std::size_t>(d.shape.cod(m));
      for (Elem e = 0; e < static_cast<Elem>(d.objects[i].size(oa)); ++e)
        uf.join(offset[i] + e, offset[j] + d.arrows[f](oa, e));
    }
    out.push_back(uf.classes());
  }
  return out;
}

inline std::vector<std::size_t> sizes(const lfp::Presheaf& x) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < objects(x); ++a) out.push_back(x.size(static_cast<ObjId>(a)));
  return out;
}

/// Every cocone over d with vertex t, each leg by brute force.
inline std::vector<std::vector<Comps>> cocones(const lfp::Diagram& d, const lfp::Presheaf& t) {
  std::vector<std::vector<Comps>> per;
  for (const auto& x : d.objects) per.push_back(homs(x, t));
  std::vector<std::vector<Comps>> out;
  std::vector<Comps> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == per.size()) {
      for (std::size_t f = 0; f < d.shape.num_morphisms(); ++f) {
        auto m = static_cast<MorId>(f);
        if (compose(cur[d.shape.cod(m)], d.arrows[f].components()) != cur[d.shape.dom(m)]) return;
      }
      out.push_back(cur);
      return;
    }
    for (const auto& h : per[i]) {
      cur.push_back(h);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Every competing cocone into every target factors through the apex exactly once.
inline bool universal(const lfp::Diagram& d, const lfp::Presheaf& apex,
                      const std::vector<lfp::NatTrans>& legs,
                      const std::vector<lfp::Presheaf>& targets, std::size_t* checked = nullptr) {
  for (const auto& t : targets) {
    auto out = homs(apex, t);
    for (const auto& cc : cocones(d, t)) {
      std::size_t n = 0;
      for (const auto& u : out) {
        bool ok = true;
        for (std::size_t i = 0; i < legs.size() && ok; ++i)
          ok = compose(u, legs[i].components()) == cc[i];
        n += ok;
      }
      if (n != 1) return false;
      if (checked) ++*checked;
    }
  }
  return true;
}

/// Sizes of lan_u X by the pointwise formula: at j, pairs (i, φ : u i → j, x ∈ X i)
/// modulo (i, φ ∘ u α, x) ~ (i′, φ, X α x).
inline std::vector<std::size_t> lan_sizes(const lfp::FinFunctor& u, const lfp::Presheaf& x) {
  const auto& I = u.source();
  const auto& J = u.target();
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < J.num_objects(); ++j) {
    struct Node { std::size_t i; MorId phi; Elem e; };
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < I.num_objects(); ++i)
      for (MorId phi : J.hom(u(static_cast<ObjId>(i)), static_cast<ObjId>(j)))
        for (Elem e = 0; e < static_cast<Elem>(x.size(static_cast<ObjId>(i))); ++e)
          nodes.push_back({i, phi, e});
    auto find = [&](std::size_t i, MorId phi, Elem e) {
      for (std::size_t k = 0; k < nodes.size(); ++k)
        if (nodes[k].i == i && nodes[k].phi == phi && nodes[k].e == e) return k;
      return nodes.size();
    };
    UnionFind uf(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (MorId alpha : I.out(static_cast<ObjId>(nodes[k].i))) {
        auto i2 = static_cast<std::size_t>(I.cod(alpha));
        // (i, φ′ ∘ u α, x) ~ (i2, φ′, X α x) for every φ′ : u i2 → j
        for (MorId phi2 : J.hom(u(static_cast<ObjId>(i2)), static_cast<ObjId>(j)))
          if (*J.compose(phi2, u.map(alpha)) == nodes[k].phi)
            uf.join(k, find(i2, phi2, x.act(alpha, nodes[k].e)));
      }
    out.push_back(uf.classes());
  }
  return out;
}

/// Every j ↓ u nonempty and connected, computed from hom sets directly.
inline bool final_functor(const lfp::FinFunctor& u) {
  const auto& I = u.source();
  const auto& J = u.target();
  for (std::size_t j = 0; j < J.num_objects(); ++j) {
    std::vector<std::pair<std::size_t, MorId>> nodes;
    for (std::size_t i = 0; i < I.num_objects(); ++i)
      for (MorId phi : J.hom(static_cast<ObjId>(j), u(static_cast<ObjId>(i)))) nodes.push_back({i, phi});
    if (nodes.empty()) return false;
    UnionFind uf(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = 0; b < nodes.size(); ++b)
        for (MorId alpha : I.hom(static_cast<ObjId>(nodes[a].first), static_cast<ObjId>(nodes[b].first)))
          if (*J.compose(u.map(alpha), nodes[a].second) == nodes[b].second) uf.join(a, b);
    if (uf.classes() != 1) return false;
  }
  return true;
}

/// Filteredness from the definition: nonempty, every pair of objects has a
/// common target, every parallel pair is equalized by some arrow.
inline bool filtered(const lfp::FinCategory& c) {
  const std::size_t n = c.num_objects();
  if (n == 0) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      bool common = false;
      for (std::size_t t = 0; t < n && !common; ++t)
        common = !c.hom(static_cast<ObjId>(a), static_cast<ObjId>(t)).empty() &&
                 !c.hom(static_cast<ObjId>(b), static_cast<ObjId>(t)).empty();
      if (!common) return false;
      const auto& hs = c.hom(static_cast<ObjId>(a), static_cast<ObjId>(b));
      for (MorId f : hs)
        for (MorId g : hs) {
          bool eq = false;
          for (MorId h : c.out(static_cast<ObjId>(b)))
            eq = eq || *c.compose(h, f) == *c.compose(h, g);
          if (!eq) return false;
        }
    }
  return true;
}

inline bool connected(const lfp::FinCategory& c) {
  if (c.num_objects() == 0) return false;
  UnionFind uf(c.num_objects());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f)
    uf.join(static_cast<std::size_t>(c.dom(static_cast<MorId>(f))),
            static_cast<std::size_t>(c.cod(static_cast<MorId>(f))));
  return uf.classes() == 1;
}

} // namespace oracle
