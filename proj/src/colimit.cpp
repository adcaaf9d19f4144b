#include "lfp/colimit.hpp"

#include <algorithm>
#include <numeric>

namespace lfp {

namespace {

bool natural(const Presheaf& x, const Presheaf& y, const std::vector<std::vector<Elem>>& comps) {
  const auto& c = x.index();
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    ObjId d = c.dom(ff);
    ObjId e = c.cod(ff);
    for (std::size_t u = 0; u < comps[d].size(); ++u)
      if (comps[e][x.act(ff, static_cast<Elem>(u))] != y.act(ff, comps[d][u])) return false;
  }
  return true;
}

std::vector<std::vector<Elem>> empty_table(const Presheaf& p) {
  std::vector<std::vector<Elem>> t(p.index().num_objects());
  for (std::size_t a = 0; a < t.size(); ++a) t[a].assign(p.size(static_cast<ObjId>(a)), -1);
  return t;
}

int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

} // namespace

Diagram make_diagram(const FinCategory& shape, const FinCategory& index,
                     std::vector<Presheaf> objects, const std::map<MorId, NatTrans>& arrows) {
  if (objects.size() != shape.num_objects())
    fail(ErrorKind::BadFunctor, "diagram does not assign every shape object");
  for (const auto& o : objects)
    if (!(o.index() == index)) fail(ErrorKind::IndexMismatch, "diagram vertex over another index");
  Diagram d{shape, index, std::move(objects), {}};
  d.arrows.resize(shape.num_morphisms());
  for (std::size_t f = 0; f < shape.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    auto it = arrows.find(ff);
    if (it == arrows.end()) {
      if (!shape.is_identity(ff))
        fail(ErrorKind::BadFunctor, "no arrow for " + shape.morphism_name(ff));
      d.arrows[f] = NatTrans::identity(d.objects[shape.dom(ff)]);
      continue;
    }
    const auto& t = it->second;
    if (!(t.source() == d.objects[shape.dom(ff)]) || !(t.target() == d.objects[shape.cod(ff)]))
      fail(ErrorKind::BadFunctor, shape.morphism_name(ff) + " has the wrong endpoints");
    d.arrows[f] = t;
  }
  for (std::size_t g = 0; g < shape.num_morphisms(); ++g)
    for (std::size_t f = 0; f < shape.num_morphisms(); ++f) {
      auto gf = shape.compose(static_cast<MorId>(g), static_cast<MorId>(f));
      if (!gf) continue;
      if (!(compose(d.arrows[g], d.arrows[f]) == d.arrows[*gf]))
        fail(ErrorKind::BadFunctor, "diagram does not preserve (" +
                                        shape.morphism_name(static_cast<MorId>(g)) + ", " +
                                        shape.morphism_name(static_cast<MorId>(f)) + ")");
    }
  for (std::size_t a = 0; a < shape.num_objects(); ++a)
    if (!(d.arrows[shape.identity(static_cast<ObjId>(a))] ==
          NatTrans::identity(d.objects[a])))
      fail(ErrorKind::BadFunctor, "identity of " + shape.object_name(static_cast<ObjId>(a)));
  return d;
}

Diagram pair_diagram(const Presheaf& x, const Presheaf& y) {
  return make_diagram(catalog::discrete(2), x.index(), {x, y}, {});
}

Diagram parallel_diagram(const NatTrans& f, const NatTrans& g) {
  auto shape = catalog::parallel_pair();
  return make_diagram(shape, f.source().index(), {f.source(), f.target()},
                      {{shape.morphism("src"), f}, {shape.morphism("tgt"), g}});
}

Diagram span_diagram(const NatTrans& k, const NatTrans& a) {
  auto shape = catalog::span();
  return make_diagram(shape, k.source().index(), {k.target(), k.source(), a.target()},
                      {{shape.morphism("p"), k}, {shape.morphism("q"), a}});
}

bool is_cocone(const Diagram& d, const std::vector<NatTrans>& legs) {
  if (legs.size() != d.shape.num_objects()) return false;
  for (std::size_t f = 0; f < d.shape.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    if (!(compose(legs[d.shape.cod(ff)], d.arrows[f]) == legs[d.shape.dom(ff)])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Coproduct coproduct(const Presheaf& x, const Presheaf& y) {
  const auto& c = x.index();
  if (!(c == y.index())) fail(ErrorKind::IndexMismatch, "coproduct over different indices");
  std::vector<std::vector<std::string>> names(c.num_objects());
  std::vector<std::vector<Elem>> i1(c.num_objects()), i2(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    auto aa = static_cast<ObjId>(a);
    for (std::size_t e = 0; e < x.size(aa); ++e) {
      i1[a].push_back(static_cast<Elem>(names[a].size()));
      names[a].push_back("1:" + x.element_name(aa, static_cast<Elem>(e)));
    }
    for (std::size_t e = 0; e < y.size(aa); ++e) {
      i2[a].push_back(static_cast<Elem>(names[a].size()));
      names[a].push_back("2:" + y.element_name(aa, static_cast<Elem>(e)));
    }
  }
  std::vector<std::vector<Elem>> actions(c.num_morphisms());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    ObjId d = c.dom(ff);
    ObjId e = c.cod(ff);
    for (Elem u : x.action(ff)) actions[f].push_back(u);
    for (Elem v : y.action(ff)) actions[f].push_back(static_cast<Elem>(x.size(e)) + v);
    (void)d;
  }
  Presheaf s = Presheaf::make(c, std::move(names), std::move(actions), false);
  return {s, NatTrans(x, s, std::move(i1), false), NatTrans(y, s, std::move(i2), false)};
}

Quotient quotient_by_pairs(const Presheaf& y,
                           const std::vector<std::pair<ElemRef, ElemRef>>& pairs) {
  const auto& c = y.index();
  const auto n = c.num_objects();
  std::vector<std::vector<int>> parent(n);
  for (std::size_t a = 0; a < n; ++a) {
    parent[a].resize(y.size(static_cast<ObjId>(a)));
    std::iota(parent[a].begin(), parent[a].end(), 0);
  }
  // Worklist congruence closure: merging u, v at a enqueues (f u, f v) for every f out of a.
  struct Item {
    ObjId a;
    Elem u;
    Elem v;
  };
  std::vector<Item> work;
  for (const auto& [l, r] : pairs) {
    if (l.obj != r.obj) fail(ErrorKind::Internal, "identifying elements of different objects");
    work.push_back({l.obj, l.elem, r.elem});
  }
  while (!work.empty()) {
    auto [a, u, v] = work.back();
    work.pop_back();
    int ru = uf_find(parent[a], u);
    int rv = uf_find(parent[a], v);
    if (ru == rv) continue;
    // keep the least index as root so it is the class representative
    if (ru < rv)
      parent[a][rv] = ru;
    else
      parent[a][ru] = rv;
    for (MorId f : c.out(a)) {
      if (c.is_identity(f)) continue;
      work.push_back({c.cod(f), y.act(f, u), y.act(f, v)});
    }
  }
  std::vector<std::vector<std::string>> names(n);
  std::vector<std::vector<Elem>> cls(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto aa = static_cast<ObjId>(a);
    std::vector<Elem> id_of(y.size(aa), -1);
    for (std::size_t e = 0; e < y.size(aa); ++e) {
      int r = uf_find(parent[a], static_cast<int>(e));
      if (id_of[r] < 0) {
        id_of[r] = static_cast<Elem>(names[a].size());
        names[a].push_back(y.element_name(aa, static_cast<Elem>(r)));
      }
      cls[a].push_back(id_of[r]);
    }
  }
  std::vector<std::vector<Elem>> actions(c.num_morphisms());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    ObjId d = c.dom(ff);
    ObjId e = c.cod(ff);
    actions[f].assign(names[d].size(), -1);
    for (std::size_t u = 0; u < y.size(d); ++u)
      actions[f][cls[d][u]] = cls[e][y.act(ff, static_cast<Elem>(u))];
  }
  Presheaf qo = Presheaf::make(c, std::move(names), std::move(actions), false);
  return {qo, NatTrans(y, qo, std::move(cls), false)};
}

Quotient coequalizer(const NatTrans& f, const NatTrans& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    fail(ErrorKind::IndexMismatch, "coequalizer of a non-parallel pair");
  std::vector<std::pair<ElemRef, ElemRef>> pairs;
  for (auto [a, x] : all_elements(f.source()))
    pairs.push_back({{a, f(a, x)}, {a, g(a, x)}});
  return quotient_by_pairs(f.target(), pairs);
}

Quotient wide_coequalizer(const std::vector<NatTrans>& arrows) {
  if (arrows.empty()) fail(ErrorKind::Internal, "wide coequalizer of no arrows");
  Quotient acc{arrows.front().target(), NatTrans::identity(arrows.front().target())};
  for (std::size_t i = 1; i < arrows.size(); ++i) {
    auto step = coequalizer(compose(acc.q, arrows.front()), compose(acc.q, arrows[i]));
    acc = {step.object, compose(step.q, acc.q)};
  }
  return acc;
}

Pushout pushout(const NatTrans& k, const NatTrans& a) {
  if (!(k.source() == a.source())) fail(ErrorKind::IndexMismatch, "pushout of a non-span");
  Coproduct s = coproduct(k.target(), a.target());
  auto q = coequalizer(compose(s.inj1, k), compose(s.inj2, a));
  return {q.object, compose(q.q, s.inj1), compose(q.q, s.inj2)};
}

Cocone finite_colimit(const Diagram& d) {
  const auto& shape = d.shape;
  const auto& c = d.index;
  const auto n = shape.num_objects();
  std::vector<std::vector<std::string>> names(c.num_objects());
  // offset[i][a]: position of D_i(a) inside the coproduct at a
  std::vector<std::vector<Elem>> offset(n, std::vector<Elem>(c.num_objects(), 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < c.num_objects(); ++a) {
      auto aa = static_cast<ObjId>(a);
      offset[i][a] = static_cast<Elem>(names[a].size());
      for (const auto& nm : d.objects[i].element_names(aa))
        names[a].push_back(shape.object_name(static_cast<ObjId>(i)) + ":" + nm);
    }
  std::vector<std::vector<Elem>> actions(c.num_morphisms());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    for (std::size_t i = 0; i < n; ++i)
      for (Elem v : d.objects[i].action(ff)) actions[f].push_back(offset[i][c.cod(ff)] + v);
  }
  Presheaf sum = Presheaf::make(c, std::move(names), std::move(actions), false);
  std::vector<NatTrans> inj;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Elem>> comps(c.num_objects());
    for (std::size_t a = 0; a < c.num_objects(); ++a)
      for (std::size_t e = 0; e < d.objects[i].size(static_cast<ObjId>(a)); ++e)
        comps[a].push_back(offset[i][a] + static_cast<Elem>(e));
    inj.emplace_back(d.objects[i], sum, std::move(comps), false);
  }
  std::vector<std::pair<ElemRef, ElemRef>> pairs;
  for (std::size_t f = 0; f < shape.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    if (shape.is_identity(ff)) continue;
    ObjId i = shape.dom(ff);
    ObjId j = shape.cod(ff);
    for (auto [a, x] : all_elements(d.objects[i]))
      pairs.push_back({{a, inj[i](a, x)}, {a, inj[j](a, d.arrows[f](a, x))}});
  }
  auto q = quotient_by_pairs(sum, pairs);
  Cocone out{d, q.object, {}};
  for (std::size_t i = 0; i < n; ++i) out.legs.push_back(compose(q.q, inj[i]));
  return out;
}

Cone finite_limit(const Diagram& d) {
  const auto& shape = d.shape;
  const auto& c = d.index;
  const auto n = shape.num_objects();
  std::vector<std::vector<std::vector<Elem>>> families(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    auto aa = static_cast<ObjId>(a);
    std::vector<Elem> fam(n, -1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        families[a].push_back(fam);
        return;
      }
      for (std::size_t x = 0; x < d.objects[i].size(aa); ++x) {
        fam[i] = static_cast<Elem>(x);
        bool ok = true;
        // check every shape arrow whose endpoints are both assigned
        for (std::size_t f = 0; f < shape.num_morphisms() && ok; ++f) {
          auto ff = static_cast<MorId>(f);
          auto s = static_cast<std::size_t>(shape.dom(ff));
          auto t = static_cast<std::size_t>(shape.cod(ff));
          if (s > i || t > i || (s != i && t != i)) continue;
          if (d.arrows[f](aa, fam[s]) != fam[t]) ok = false;
        }
        if (ok) rec(i + 1);
      }
      fam[i] = -1;
    };
    rec(0);
  }
  std::vector<std::vector<std::string>> names(c.num_objects());
  std::vector<std::map<std::vector<Elem>, Elem>> pos(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    for (const auto& fam : families[a]) {
      std::string nm = "(";
      for (std::size_t i = 0; i < n; ++i) {
        if (i) nm += ",";
        nm += d.objects[i].element_name(static_cast<ObjId>(a), fam[i]);
      }
      nm += ")";
      pos[a][fam] = static_cast<Elem>(names[a].size());
      names[a].push_back(nm);
    }
  std::vector<std::vector<Elem>> actions(c.num_morphisms());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    for (const auto& fam : families[c.dom(ff)]) {
      std::vector<Elem> img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = d.objects[i].act(ff, fam[i]);
      actions[f].push_back(pos[c.cod(ff)].at(img));
    }
  }
  Presheaf apex = Presheaf::make(c, std::move(names), std::move(actions), false);
  Cone out{d, apex, {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Elem>> comps(c.num_objects());
    for (std::size_t a = 0; a < c.num_objects(); ++a)
      for (const auto& fam : families[a]) comps[a].push_back(fam[i]);
    out.legs.emplace_back(apex, d.objects[i], std::move(comps), false);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<NatTrans> descend(const Presheaf& p, const std::vector<NatTrans>& ms,
                                const std::vector<NatTrans>& hs, const Presheaf& w) {
  if (ms.size() != hs.size()) return std::nullopt;
  auto table = empty_table(p);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (auto [a, x] : all_elements(ms[i].source())) {
      Elem& slot = table[a][ms[i](a, x)];
      Elem v = hs[i](a, x);
      if (slot >= 0 && slot != v) return std::nullopt;
      slot = v;
    }
  for (const auto& row : table)
    for (Elem v : row)
      if (v < 0) return std::nullopt;
  if (!natural(p, w, table)) return std::nullopt;
  return NatTrans(p, w, std::move(table), false);
}

std::optional<NatTrans> mediate(const Cocone& colimit, const std::vector<NatTrans>& legs,
                                const Presheaf& w) {
  return descend(colimit.apex, colimit.legs, legs, w);
}

NatTrans copair(const Coproduct& c, const NatTrans& u, const NatTrans& v) {
  auto r = descend(c.object, {c.inj1, c.inj2}, {u, v}, u.target());
  if (!r) fail(ErrorKind::Internal, "copairing failed");
  return *r;
}

NatTrans pushout_mediator(const Pushout& p, const NatTrans& u, const NatTrans& v) {
  auto r = descend(p.object, {p.inj_cod, p.inj_base}, {u, v}, u.target());
  if (!r) fail(ErrorKind::Internal, "maps do not form a cocone on the pushout square");
  return *r;
}

NatTrans coequalizer_mediator(const Quotient& q, const NatTrans& h) {
  auto r = descend(q.object, {q.q}, {h}, h.target());
  if (!r) fail(ErrorKind::Internal, "map does not coequalize");
  return *r;
}

std::optional<NatTrans> limit_mediator(const Cone& limit, const Presheaf& vertex,
                                       const std::vector<NatTrans>& legs) {
  const auto& c = limit.apex.index();
  const auto n = limit.diagram.shape.num_objects();
  std::vector<std::vector<Elem>> comps(c.num_objects());
  // index the apex families
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    auto aa = static_cast<ObjId>(a);
    std::map<std::vector<Elem>, Elem> pos;
    for (std::size_t e = 0; e < limit.apex.size(aa); ++e) {
      std::vector<Elem> fam(n);
      for (std::size_t i = 0; i < n; ++i) fam[i] = limit.legs[i](aa, static_cast<Elem>(e));
      pos[fam] = static_cast<Elem>(e);
    }
    for (std::size_t x = 0; x < vertex.size(aa); ++x) {
      std::vector<Elem> fam(n);
      for (std::size_t i = 0; i < n; ++i) fam[i] = legs[i](aa, static_cast<Elem>(x));
      auto it = pos.find(fam);
      if (it == pos.end()) return std::nullopt;
      comps[a].push_back(it->second);
    }
  }
  if (!natural(vertex, limit.apex, comps)) return std::nullopt;
  return NatTrans(vertex, limit.apex, std::move(comps), false);
}

// ---------------------------------------------------------------------------

void for_each_cocone(const Diagram& d, const Presheaf& t,
                     const std::function<bool(const std::vector<NatTrans>&)>& visit,
                     const Config& cfg) {
  const auto n = d.shape.num_objects();
  std::vector<std::vector<NatTrans>> options(n);
  for (std::size_t i = 0; i < n; ++i) options[i] = enumerate_homs(d.objects[i], t, cfg);
  std::vector<NatTrans> legs(n);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == n) {
      if (!visit(legs)) stop = true;
      return;
    }
    for (const auto& opt : options[i]) {
      legs[i] = opt;
      bool ok = true;
      for (std::size_t f = 0; f < d.shape.num_morphisms() && ok; ++f) {
        auto ff = static_cast<MorId>(f);
        auto s = static_cast<std::size_t>(d.shape.dom(ff));
        auto e = static_cast<std::size_t>(d.shape.cod(ff));
        if (s > i || e > i || (s != i && e != i)) continue;
        if (!(compose(legs[e], d.arrows[f]) == legs[s])) ok = false;
      }
      if (ok) rec(i + 1);
      if (stop) return;
    }
  };
  rec(0);
}

std::size_t count_mediators(const Presheaf& apex, const std::vector<NatTrans>& legs,
                            const Presheaf& t, const std::vector<NatTrans>& given,
                            const Config& cfg) {
  auto fixed = empty_table(apex);
  for (std::size_t i = 0; i < legs.size(); ++i)
    for (auto [a, x] : all_elements(legs[i].source())) {
      Elem& slot = fixed[a][legs[i](a, x)];
      Elem v = given[i](a, x);
      if (slot >= 0 && slot != v) return 0;
      slot = v;
    }
  HomSearch s;
  s.allowed = [&](ObjId a, Elem x, Elem y) { return fixed[a][x] < 0 || fixed[a][x] == y; };
  return count_homs(apex, t, cfg, s);
}

UniversalityReport check_colimit_universal(const Diagram& d, const Presheaf& apex,
                                           const std::vector<NatTrans>& legs,
                                           const std::vector<Presheaf>& targets,
                                           const Config& cfg) {
  UniversalityReport rep;
  if (!is_cocone(d, legs)) {
    rep.ok = false;
    rep.failure = "legs do not form a cocone";
    return rep;
  }
  for (std::size_t ti = 0; ti < targets.size() && rep.ok; ++ti) {
    const auto& t = targets[ti];
    for_each_cocone(
        d, t,
        [&](const std::vector<NatTrans>& other) {
          ++rep.cocones;
          std::size_t m = count_mediators(apex, legs, t, other, cfg);
          if (m != 1) {
            rep.ok = false;
            rep.failure = std::to_string(m) + " mediators into competitor #" + std::to_string(ti) +
                          " (total size " + std::to_string(t.total_size()) + ")";
            return false;
          }
          return true;
        },
        cfg);
  }
  return rep;
}

UniversalityReport check_pushout_universal(const NatTrans& k, const NatTrans& a,
                                           const NatTrans& inj_cod, const NatTrans& inj_base,
                                           const std::vector<Presheaf>& targets,
                                           const Config& cfg) {
  Diagram d = span_diagram(k, a);
  NatTrans diag = compose(inj_cod, k);
  return check_colimit_universal(d, inj_cod.target(), {inj_cod, diag, inj_base}, targets, cfg);
}

std::vector<Presheaf> competitor_family(const FinCategory& index, std::size_t small_total,
                                        const std::vector<Presheaf>& extras) {
  auto out = enumerate_presheaves(index, small_total);
  out.insert(out.end(), extras.begin(), extras.end());
  return out;
}

} // namespace lfp
