#pragma once

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "lfp/comma.hpp"

namespace th {

using namespace lfp;

/// Graph over E ⇉ V from vertex names and (edge, source, target) triples.
inline Presheaf graph(const std::vector<std::string>& vs,
                      const std::vector<std::tuple<std::string, std::string, std::string>>& es = {}) {
  RawPresheaf raw;
  raw.carrier["V"] = vs;
  raw.carrier["E"] = {};
  for (const auto& [e, s, t] : es) {
    raw.carrier["E"].push_back(e);
    raw.action["src"][e] = s;
    raw.action["tgt"][e] = t;
  }
  return validate_presheaf(catalog::parallel_pair(), raw);
}

/// Finite set over the terminal index.
inline Presheaf set(const std::vector<std::string>& xs) {
  RawPresheaf raw;
  raw.carrier["*"] = xs;
  return validate_presheaf(catalog::terminal(), raw);
}

inline NatTrans map(const Presheaf& x, const Presheaf& y,
                    const std::map<std::string, std::map<std::string, std::string>>& comps) {
  return validate_nat_trans(x, y, comps);
}

/// Graph map from vertex and edge assignments.
inline NatTrans gmap(const Presheaf& x, const Presheaf& y, const std::map<std::string, std::string>& v,
                     const std::map<std::string, std::string>& e = {}) {
  return validate_nat_trans(x, y, {{"V", v}, {"E", e}});
}

inline NatTrans smap(const Presheaf& x, const Presheaf& y, const std::map<std::string, std::string>& v) {
  return validate_nat_trans(x, y, {{"*", v}});
}

/// Inclusion of the vertex object: restriction takes a graph to its vertex set.
inline LfpMorphism vertex_inclusion() {
  const auto& g = catalog::parallel_pair();
  return {FinFunctor(catalog::terminal(), g, {g.object("V")}, {g.identity(g.object("V"))})};
}

inline std::vector<std::size_t> sizes(const Presheaf& x) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < x.index().num_objects(); ++a) out.push_back(x.size(static_cast<ObjId>(a)));
  return out;
}

/// A random datum over the base: K, K′ and B of the given total sizes.
inline std::optional<GeneratorDatum> random_datum(const Presheaf& base, std::size_t max_k,
                                                  std::size_t max_kp, std::mt19937_64& rng) {
  const auto& idx = base.index();
  for (int attempt = 0; attempt < 32; ++attempt) {
    Presheaf k = random_presheaf(idx, max_k, rng);
    Presheaf kp = random_presheaf(idx, max_kp, rng);
    auto kk = random_hom(k, kp, rng);
    auto a = random_hom(k, base, rng);
    if (kk && a) return GeneratorDatum{*kk, *a};
  }
  return std::nullopt;
}

/// Arrows for every non-identity morphism of the shape: composites are forced,
/// the rest are drawn by `pick`. nullopt when a draw breaks functoriality.
template <class Pick>
std::optional<std::map<MorId, NatTrans>> shape_arrows(const FinCategory& shape, Pick pick) {
  std::map<MorId, NatTrans> out;
  const std::size_t n = shape.num_morphisms();
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t m = 0; m < n; ++m) {
      auto mm = static_cast<MorId>(m);
      if (shape.is_identity(mm) || out.count(mm)) continue;
      bool decomposable = false;
      for (std::size_t g = 0; g < n && !out.count(mm); ++g)
        for (std::size_t f = 0; f < n && !out.count(mm); ++f) {
          auto gg = static_cast<MorId>(g), ff = static_cast<MorId>(f);
          if (gg == mm || ff == mm || shape.is_identity(gg) || shape.is_identity(ff)) continue;
          if (shape.cod(ff) != shape.dom(gg) || *shape.compose(gg, ff) != mm) continue;
          decomposable = true;
          if (out.count(gg) && out.count(ff)) out[mm] = compose(out.at(gg), out.at(ff));
        }
      if (!out.count(mm) && !decomposable) {
        auto h = pick(shape.dom(mm), shape.cod(mm));
        if (!h) return std::nullopt;
        out[mm] = *h;
      }
      if (out.count(mm)) progress = true;
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    auto mm = static_cast<MorId>(m);
    if (shape.is_identity(mm) || out.count(mm)) continue;
    // only cyclic decompositions remain: draw and let validation decide
    auto h = pick(shape.dom(mm), shape.cod(mm));
    if (!h) return std::nullopt;
    out[mm] = *h;
  }
  return out;
}

/// A random diagram of the given shape with vertices of total size ≤ max_total.
inline std::optional<Diagram> random_diagram(const FinCategory& shape, const FinCategory& index,
                                             std::size_t max_total, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Presheaf> objs;
    for (std::size_t i = 0; i < shape.num_objects(); ++i)
      objs.push_back(random_presheaf(index, max_total, rng));
    auto arrows = shape_arrows(shape, [&](ObjId i, ObjId j) { return random_hom(objs[i], objs[j], rng); });
    if (!arrows) continue;
    try {
      return make_diagram(shape, index, objs, *arrows);
    } catch (const LfpError&) {
    }
  }
  return std::nullopt;
}

/// A random diagram of objects under the base.
inline std::optional<CosliceDiagram> random_coslice_diagram(const FinCategory& shape,
                                                            const Presheaf& base,
                                                            std::size_t max_total,
                                                            std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<CosliceObject> objs;
    bool ok = true;
    for (std::size_t i = 0; i < shape.num_objects() && ok; ++i) {
      Presheaf x = random_presheaf(base.index(), max_total, rng);
      auto f = random_hom(base, x, rng);
      if (!f) ok = false;
      else objs.push_back({*f});
    }
    if (!ok) continue;
    auto arrows = shape_arrows(shape, [&](ObjId i, ObjId j) -> std::optional<NatTrans> {
      auto hs = enumerate_coslice_homs(objs[i], objs[j]);
      if (hs.empty()) return std::nullopt;
      return hs[std::uniform_int_distribution<std::size_t>(0, hs.size() - 1)(rng)];
    });
    if (!arrows) continue;
    try {
      return make_coslice_diagram(shape, base, objs, *arrows);
    } catch (const LfpError&) {
    }
  }
  return std::nullopt;
}

} // namespace th
