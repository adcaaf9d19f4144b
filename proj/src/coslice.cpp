#include "lfp/coslice.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>

namespace lfp {

CosliceMap make_coslice_map(const CosliceObject& source, const CosliceObject& target,
                            const NatTrans& g) {
  if (!(g.source() == source.cod()) || !(g.target() == target.cod()))
    fail(ErrorKind::ValidationError, "coslice map with the wrong endpoints");
  if (!(compose(g, source.arrow) == target.arrow))
    fail(ErrorKind::ValidationError, "triangle under the base does not commute");
  return {source, target, g};
}

CosliceMap identity_map(const CosliceObject& x) {
  return {x, x, NatTrans::identity(x.cod())};
}

CosliceMap compose(const CosliceMap& g, const CosliceMap& f) {
  return {f.source, g.target, compose(g.underlying, f.underlying)};
}

namespace {

// Fixes g(f1(b)) = f2(b); nullopt when the constraints clash.
std::optional<std::vector<std::vector<Elem>>> triangle_constraints(const CosliceObject& f1,
                                                                   const CosliceObject& f2) {
  const auto& c = f1.base().index();
  std::vector<std::vector<Elem>> fixed(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    fixed[a].assign(f1.cod().size(static_cast<ObjId>(a)), -1);
  for (auto [a, b] : all_elements(f1.base())) {
    Elem& slot = fixed[a][f1.arrow(a, b)];
    Elem v = f2.arrow(a, b);
    if (slot >= 0 && slot != v) return std::nullopt;
    slot = v;
  }
  return fixed;
}

void for_each_coslice_hom(const CosliceObject& f1, const CosliceObject& f2, const Config& cfg,
                          bool injective,
                          const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit) {
  if (!(f1.base() == f2.base())) fail(ErrorKind::IndexMismatch, "coslice objects over different bases");
  auto fixed = triangle_constraints(f1, f2);
  if (!fixed) return;
  HomSearch s;
  s.injective = injective;
  s.allowed = [&](ObjId a, Elem x, Elem y) {
    Elem v = (*fixed)[a][x];
    return v < 0 || v == y;
  };
  for_each_hom(f1.cod(), f2.cod(), visit, cfg, s);
}

} // namespace

std::vector<NatTrans> enumerate_coslice_homs(const CosliceObject& f1, const CosliceObject& f2,
                                             const Config& cfg) {
  std::vector<NatTrans> out;
  for_each_coslice_hom(f1, f2, cfg, false, [&](const std::vector<std::vector<Elem>>& c) {
    out.emplace_back(f1.cod(), f2.cod(), c, false);
    return true;
  });
  return out;
}

std::size_t count_coslice_homs(const CosliceObject& f1, const CosliceObject& f2,
                               const Config& cfg) {
  std::size_t n = 0;
  for_each_coslice_hom(f1, f2, cfg, false, [&](const std::vector<std::vector<Elem>>&) {
    ++n;
    return true;
  });
  return n;
}

std::optional<NatTrans> find_coslice_iso(const CosliceObject& f1, const CosliceObject& f2,
                                         const Config& cfg) {
  const auto& c = f1.cod().index();
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    if (f1.cod().size(static_cast<ObjId>(a)) != f2.cod().size(static_cast<ObjId>(a)))
      return std::nullopt;
  std::optional<NatTrans> out;
  for_each_coslice_hom(f1, f2, cfg, true, [&](const std::vector<std::vector<Elem>>& comps) {
    out.emplace(f1.cod(), f2.cod(), comps, false);
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------

CosliceDiagram make_coslice_diagram(const FinCategory& shape, const Presheaf& base,
                                    std::vector<CosliceObject> objects,
                                    const std::map<MorId, NatTrans>& arrows) {
  std::vector<Presheaf> cods;
  for (const auto& o : objects) {
    if (!(o.base() == base)) fail(ErrorKind::ValidationError, "coslice vertex over another base");
    cods.push_back(o.cod());
  }
  Diagram d = make_diagram(shape, base.index(), std::move(cods), arrows);
  for (std::size_t f = 0; f < shape.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    if (!(compose(d.arrows[f], objects[shape.dom(ff)].arrow) == objects[shape.cod(ff)].arrow))
      fail(ErrorKind::ValidationError,
           shape.morphism_name(ff) + " does not commute with the arrows from the base");
  }
  return {shape, base, std::move(objects), std::move(d.arrows)};
}

Diagram cod_diagram(const CosliceDiagram& d) {
  std::vector<Presheaf> cods;
  for (const auto& o : d.objects) cods.push_back(o.cod());
  return Diagram{d.shape, d.base.index(), std::move(cods), d.arrows};
}

ExtendedShape extend_shape(const FinCategory& shape) {
  std::string apex = "i0";
  while (shape.find_object(apex)) apex += "'";
  CategoryBuilder b;
  const auto n = shape.num_objects();
  const auto m = shape.num_morphisms();
  for (std::size_t i = 0; i < n; ++i) b.add_object(shape.object_name(static_cast<ObjId>(i)));
  for (std::size_t f = 0; f < m; ++f)
    b.add_morphism(shape.morphism_name(static_cast<MorId>(f)), shape.dom(static_cast<MorId>(f)),
                   shape.cod(static_cast<MorId>(f)));
  for (std::size_t i = 0; i < n; ++i) b.set_identity(static_cast<ObjId>(i), shape.identity(static_cast<ObjId>(i)));
  ObjId i0 = b.add_object(apex);
  std::vector<MorId> from(n);
  for (std::size_t i = 0; i < n; ++i)
    from[i] = b.add_morphism(apex + ">" + shape.object_name(static_cast<ObjId>(i)), i0,
                             static_cast<ObjId>(i));
  MorId id0 = b.add_morphism("id_" + apex, i0, i0);
  b.set_identity(i0, id0);
  const auto total = static_cast<MorId>(m + n + 1);
  auto from_of = [&](MorId f) -> int {
    for (std::size_t i = 0; i < n; ++i)
      if (from[i] == f) return static_cast<int>(i);
    return -1;
  };
  (void)total;
  b.fill_composites([&](MorId g, MorId f) -> MorId {
    if (f == id0) return g;
    if (g == id0) return f;
    int fi = from_of(f);
    if (fi >= 0) {
      // g is an original morphism out of object fi
      return from[shape.cod(g)];
    }
    return *shape.compose(g, f);
  });
  return {b.build(false), i0, std::move(from)};
}

CosliceColimit coslice_colimit(const CosliceDiagram& d, const Config& cfg) {
  ExtendedShape ext = extend_shape(d.shape);
  const auto n = d.shape.num_objects();
  std::vector<Presheaf> verts;
  for (const auto& o : d.objects) verts.push_back(o.cod());
  verts.push_back(d.base);
  std::map<MorId, NatTrans> arrows;
  for (std::size_t f = 0; f < d.shape.num_morphisms(); ++f)
    if (!d.shape.is_identity(static_cast<MorId>(f))) arrows.emplace(static_cast<MorId>(f), d.arrows[f]);
  for (std::size_t i = 0; i < n; ++i) arrows.emplace(ext.from_i0[i], d.objects[i].arrow);
  Diagram full = make_diagram(ext.shape, d.base.index(), std::move(verts), arrows);
  Cocone col = finite_colimit(full);
  CosliceColimit out{{col.legs[ext.i0]}, {}};
  for (std::size_t i = 0; i < n; ++i) out.legs.push_back(col.legs[i]);
  // the leg at i0 coincides with every composite leg_i ∘ f_i
  for (std::size_t i = 0; i < n; ++i)
    if (!(compose(out.legs[i], d.objects[i].arrow) == out.object.arrow))
      fail(ErrorKind::Internal, "coslice colimit legs disagree under the base");
  if (n > 0 && is_connected(d.shape)) {
    Cocone plain = finite_colimit(cod_diagram(d));
    if (!isomorphic(plain.apex, out.object.cod(), cfg))
      fail(ErrorKind::Internal, "cod does not preserve a connected colimit");
  }
  return out;
}

CodCorrection cod_correction(const CosliceDiagram& d, const std::vector<std::size_t>& order,
                             const Config& cfg) {
  const auto n = d.shape.num_objects();
  if (n == 0) return {d.base, NatTrans::identity(d.base)};
  Cocone col = finite_colimit(cod_diagram(d));
  std::vector<std::size_t> perm = order;
  if (perm.empty()) {
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
  }
  std::vector<NatTrans> composites;
  for (std::size_t i : perm) composites.push_back(compose(col.legs[i], d.objects[i].arrow));
  Quotient w = wide_coequalizer(composites);
  CodCorrection out{w.object, compose(w.q, composites.front())};
  auto direct = coslice_colimit(d, cfg);
  if (!isomorphic(out.object, direct.object.cod(), cfg))
    fail(ErrorKind::Internal, "wide coequalizer correction disagrees with the coslice colimit");
  return out;
}

// ---------------------------------------------------------------------------

CosliceObject cod_star(const Presheaf& base, const Presheaf& c) {
  return {coproduct(base, c).inj1};
}

bool check_cod_star_adjunction(const Presheaf& base, const Presheaf& c, const CosliceObject& f,
                               const Config& cfg) {
  Coproduct s = coproduct(base, c);
  CosliceObject star{s.inj1};
  auto left = enumerate_coslice_homs(star, f, cfg);
  auto right = count_homs(c, f.cod(), cfg);
  if (left.size() != right) return false;
  // restriction along inj2 must be injective (then bijective by counting)
  std::vector<NatTrans> restricted;
  for (const auto& g : left) restricted.push_back(compose(g, s.inj2));
  std::sort(restricted.begin(), restricted.end());
  return std::adjacent_find(restricted.begin(), restricted.end()) == restricted.end();
}

CosliceObject Pushforward::push(const CosliceObject& h) const {
  return {pushout(h.arrow, f).inj_base};
}

NatTrans Pushforward::push(const CosliceMap& g) const {
  Pushout p1 = pushout(g.source.arrow, f);
  Pushout p2 = pushout(g.target.arrow, f);
  return pushout_mediator(p1, compose(p2.inj_cod, g.underlying), p2.inj_base);
}

CosliceObject Pushforward::pull(const CosliceObject& g) const { return {compose(g.arrow, f)}; }

Pushforward pushforward_functor(const NatTrans& f) { return {f}; }

bool check_pushforward_adjunction(const Pushforward& p, const CosliceObject& h,
                                  const CosliceObject& g, const Config& cfg) {
  Pushout po = pushout(h.arrow, p.f);
  CosliceObject pushed{po.inj_base};
  auto left = enumerate_coslice_homs(pushed, g, cfg);
  auto right = count_coslice_homs(h, p.pull(g), cfg);
  if (left.size() != right) return false;
  std::vector<NatTrans> restricted;
  for (const auto& u : left) {
    NatTrans v = compose(u, po.inj_cod);
    if (!(compose(v, h.arrow) == p.pull(g).arrow)) return false;
    restricted.push_back(v);
  }
  std::sort(restricted.begin(), restricted.end());
  return std::adjacent_find(restricted.begin(), restricted.end()) == restricted.end();
}

// ---------------------------------------------------------------------------

CosliceChain coslice_chain(const Presheaf& base, const IndObject& x) {
  auto stage = [base, x](std::size_t n) { return coproduct(base, x.stage(n)).object; };
  auto trans = [base, x](std::size_t n) {
    Coproduct from = coproduct(base, x.stage(n));
    Coproduct to = coproduct(base, x.stage(n + 1));
    return copair(from, to.inj1, compose(to.inj2, x.transition(n, n + 1)));
  };
  IndObject chain = IndObject::chain("B+" + x.name(), base.index(), stage, trans, x.bound());
  auto arrow = [base, chain](std::size_t n) {
    Presheaf cn = chain.stage(n);
    std::vector<std::vector<Elem>> comps(base.index().num_objects());
    for (std::size_t a = 0; a < comps.size(); ++a)
      for (std::size_t e = 0; e < base.size(static_cast<ObjId>(a)); ++e)
        comps[a].push_back(static_cast<Elem>(e));
    return NatTrans(base, cn, std::move(comps), false);
  };
  return {base, chain, arrow};
}

CosliceChain constant_coslice_chain(const CosliceObject& f, std::size_t bound) {
  NatTrans arrow = f.arrow;
  return {f.base(), IndObject::constant(f.cod(), bound), [arrow](std::size_t) { return arrow; }};
}

LiftConstraint under_base(const CosliceChain& c, const NatTrans& source) {
  struct Cache {
    std::mutex mu;
    std::map<int, NatTrans> arrows;
  };
  auto cache = std::make_shared<Cache>();
  // preimages[a][x]: base elements sent to x
  const auto& idx = source.source().index();
  std::vector<std::vector<std::vector<Elem>>> pre(idx.num_objects());
  for (std::size_t a = 0; a < idx.num_objects(); ++a)
    pre[a].resize(source.target().size(static_cast<ObjId>(a)));
  for (auto [a, b] : all_elements(source.source())) pre[a][source(a, b)].push_back(b);
  auto arrow_fn = c.arrow;
  return [cache, pre = std::move(pre), arrow_fn](int stage, ObjId a, Elem x, Elem y) {
    if (pre[a][x].empty()) return true;
    NatTrans arr;
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->arrows.find(stage);
      if (it == cache->arrows.end())
        it = cache->arrows.emplace(stage, arrow_fn(static_cast<std::size_t>(stage))).first;
      arr = it->second;
    }
    for (Elem b : pre[a][x])
      if (arr(a, b) != y) return false;
    return true;
  };
}

} // namespace lfp
