#include "lfp/generator.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lfp {

namespace {

Factorization make_factorization(const NatTrans& k0, const NatTrans& a0, const Pushout& outer,
                                 const Mask& mask, int position) {
  Factorization f;
  f.k0 = k0;
  f.a0 = a0;
  f.stage_mask = mask;
  auto [sub, incl] = subpresheaf(a0.target(), mask);
  f.a1 = incl;
  f.a2 = corestrict(a0, incl);
  f.inner = pushout(k0, f.a2);
  f.outer = outer;
  f.comparison = pushout_mediator(f.inner, outer.inj_cod, compose(outer.inj_base, incl));
  f.position = position;
  return f;
}

// inner(f) → inner(g) for stages f ⊆ g of the same presentation.
NatTrans stage_step(const Factorization& f, const Factorization& g) {
  NatTrans incl = corestrict(f.a1, g.a1);
  return pushout_mediator(f.inner, g.inner.inj_cod, compose(g.inner.inj_base, incl));
}

HomKey key_of(const NatTrans& t) { return t.components(); }

} // namespace

// ---------------------------------------------------------------------------

Evaluation evaluate_square(const GeneratorDatum& d) {
  if (!(d.k.source() == d.a.source()))
    fail(ErrorKind::IndexMismatch, "datum arrows have different sources");
  return {pushout(d.k, d.a)};
}

CosliceObject evaluate(const GeneratorDatum& d) { return evaluate_square(d).object(); }

IndEvaluation evaluate(const IndGeneratorDatum& d) {
  if (!d.base.is_chain()) fail(ErrorKind::UnsupportedShape, "chain base expected");
  if (!(d.k.source() == d.a.source()))
    fail(ErrorKind::IndexMismatch, "datum arrows have different sources");
  const auto s = static_cast<std::size_t>(d.stage);
  if (s >= d.base.bound()) fail(ErrorKind::StageBoundExceeded, "datum stage past the bound");
  IndObject base = d.base;
  NatTrans k = d.k;
  NatTrans a = d.a;
  auto square = [base, k, a, s](std::size_t m) {
    return pushout(k, compose(base.transition(s, s + m), a));
  };
  auto stage = [square](std::size_t m) { return square(m).object; };
  auto trans = [square, base, s](std::size_t m) {
    Pushout p = square(m);
    Pushout q = square(m + 1);
    return pushout_mediator(p, q.inj_cod,
                            compose(q.inj_base, base.transition(s + m, s + m + 1)));
  };
  IndEvaluation r;
  r.offset = d.stage;
  r.pushouts = IndObject::chain("pushout(" + base.name() + ")", base.index(), stage, trans,
                                base.bound() - s);
  r.from_base = [square](std::size_t m) { return square(m).inj_base; };
  r.from_cod = [square](std::size_t m) { return square(m).inj_cod; };
  return r;
}

std::vector<Mask> presentation_stages(const Presheaf& base, const Mask& required) {
  std::vector<Mask> out;
  for (auto& m : subpresheaf_masks(base))
    if (mask_contains(m, required)) out.push_back(std::move(m));
  return out;
}

AnelResult anel_factorize(const NatTrans& k0, const NatTrans& a0, const NatTrans& a,
                          const Config& cfg) {
  Pushout outer = pushout(k0, a0);
  if (!(a.target() == outer.object))
    fail(ErrorKind::IndexMismatch, "the arrow does not land in the pushout of the datum");
  auto stages = presentation_stages(a0.target(), image_mask(a0));
  for (std::size_t p = 0; p < stages.size(); ++p) {
    check_cancel(cfg);
    Factorization f = make_factorization(k0, a0, outer, stages[p], static_cast<int>(p));
    HomSearch s;
    s.allowed = [&](ObjId o, Elem x, Elem y) { return f.comparison(o, y) == a(o, x); };
    if (auto m = first_hom(a.source(), f.inner.object, cfg, s)) return {f, *m};
  }
  fail(ErrorKind::Internal, "no factorization even through the base itself");
}

IndAnelResult anel_factorize(const IndGeneratorDatum& d, const ColimitArrow& a,
                             const Config& cfg) {
  IndEvaluation ev = evaluate(d);
  Lift l = lift_through(a.source, ev.pushouts, a, cfg);
  IndAnelResult r;
  r.base_stage = d.stage + l.stage;
  r.a2 = compose(d.base.transition(static_cast<std::size_t>(d.stage),
                                   static_cast<std::size_t>(r.base_stage)),
                 d.a);
  r.inner = pushout(d.k, r.a2);
  r.mediator = l.map;
  r.lift = l;
  return r;
}

Factorization refactor(const Factorization& f, std::size_t position) {
  auto stages = presentation_stages(f.a0.target(), image_mask(f.a0));
  if (position >= stages.size()) fail(ErrorKind::Internal, "presentation position out of range");
  return make_factorization(f.k0, f.a0, f.outer, stages[position], static_cast<int>(position));
}

RefinedFactorization refine_parallel_mediators(const Factorization& f, const NatTrans& m,
                                               const NatTrans& mp, const Config& cfg) {
  if (m == mp) return {f, NatTrans::identity(f.inner.object)};
  if (!(compose(f.comparison, m) == compose(f.comparison, mp)))
    fail(ErrorKind::NoRefinement, "the mediators differ after the comparison");
  auto stages = presentation_stages(f.a0.target(), image_mask(f.a0));
  for (std::size_t p = static_cast<std::size_t>(f.position) + 1; p < stages.size(); ++p) {
    check_cancel(cfg);
    if (!mask_contains(stages[p], f.stage_mask)) continue;
    Factorization g = make_factorization(f.k0, f.a0, f.outer, stages[p], static_cast<int>(p));
    NatTrans step = stage_step(f, g);
    if (compose(step, m) == compose(step, mp)) return {g, step};
  }
  fail(ErrorKind::NoRefinement, "no stage of the presentation equalizes the mediators");
}

Lift refine_parallel_mediators(const IndGeneratorDatum& d, const Lift& m, const Lift& mp,
                               const Config& cfg) {
  return refine_lifts(m, mp, evaluate(d).pushouts, cfg);
}

SquareCertificate certify_pushout(const std::string& name, const NatTrans& k, const NatTrans& a,
                                  const NatTrans& u, const NatTrans& v, const Config& cfg,
                                  std::size_t competitor_total) {
  SquareCertificate c;
  c.name = name;
  c.commutes = compose(u, k) == compose(v, a);
  if (!c.commutes) return c;
  Pushout p = pushout(k, a);
  c.pushout = pushout_mediator(p, u, v).is_iso();
  auto targets = competitor_family(k.source().index(), competitor_total, {u.target()});
  auto rep = check_pushout_universal(k, a, u, v, targets, cfg);
  c.universal = rep.ok;
  c.cocones = rep.cocones;
  return c;
}

bool TriangleLift::ok() const {
  for (const auto& s : squares)
    if (!s.ok()) return false;
  return compose(m, m1) == m2;
}

TriangleLift lift_triangle(const GeneratorDatum& n1, const GeneratorDatum& n2, const NatTrans& n,
                           const Config& cfg) {
  const Presheaf& b = n1.base();
  if (!(n2.base() == b)) fail(ErrorKind::IndexMismatch, "data over different bases");
  Evaluation e1 = evaluate_square(n1);
  Evaluation e2 = evaluate_square(n2);
  if (!(n.source() == e1.square.object) || !(n.target() == e2.square.object))
    fail(ErrorKind::IndexMismatch, "the map does not connect the evaluations");
  if (!(compose(n, e1.square.inj_base) == e2.square.inj_base))
    fail(ErrorKind::ValidationError, "the map is not under the base");

  // common stage K3 through which both data factor
  Mask m3 = mask_union(image_mask(n1.a), image_mask(n2.a));
  auto [k3, a3] = subpresheaf(b, m3);
  NatTrans b1 = corestrict(n1.a, a3);
  NatTrans b2 = corestrict(n2.a, a3);
  Pushout q1 = pushout(n1.k, b1);
  Pushout q2 = pushout(n2.k, b2);
  NatTrans p1_to_c1 = pushout_mediator(q1, e1.square.inj_cod, compose(e1.square.inj_base, a3));
  NatTrans p2_to_c2 = pushout_mediator(q2, e2.square.inj_cod, compose(e2.square.inj_base, a3));

  // factor P1 → C2 through a stage of the pushout of K3 → P2
  Pushout outer2 = pushout(q2.inj_base, a3);
  NatTrans c2_iso = pushout_mediator(e2.square, compose(outer2.inj_cod, q2.inj_cod),
                                     outer2.inj_base);
  AnelResult anel =
      anel_factorize(q2.inj_base, a3, compose(c2_iso, compose(n, p1_to_c1)), cfg);
  const Factorization& fac = anel.factorization;

  // equalize the two lifts of K3 → C2
  NatTrans via_p1 = compose(anel.mediator, q1.inj_base);
  NatTrans via_base = compose(fac.inner.inj_base, fac.a2);
  RefinedFactorization ref = refine_parallel_mediators(fac, via_p1, via_base, cfg);
  const Factorization& fac5 = ref.factorization;
  const NatTrans& b43 = fac5.a2; // K3 → K5
  const NatTrans& a5 = fac5.a1;  // K5 → B

  TriangleLift t;
  Pushout t1 = pushout(q1.inj_base, b43);
  t.common = {t1.inj_base, a5};
  t.m1 = t1.inj_base;
  t.m2 = fac5.inner.inj_base;
  t.m = pushout_mediator(t1, compose(ref.step, anel.mediator), t.m2);
  t.to_c1 = pushout_mediator(t1, p1_to_c1, compose(e1.square.inj_base, a5));
  t.to_c2 = pushout_mediator(fac5.inner, p2_to_c2, compose(e2.square.inj_base, a5));
  t.anel_position = static_cast<std::size_t>(fac.position);
  t.refined_position = static_cast<std::size_t>(fac5.position);
  t.squares.push_back(certify_pushout("first", t.m1, a5, t.to_c1, e1.square.inj_base, cfg));
  t.squares.push_back(certify_pushout("middle", t.m, t.to_c1, t.to_c2, n, cfg));
  t.squares.push_back(certify_pushout("second", t.m2, a5, t.to_c2, e2.square.inj_base, cfg));
  return t;
}

// ---------------------------------------------------------------------------

CosliceDiagram evaluate(const GeneratorDiagram& d) {
  std::vector<CosliceObject> objs;
  for (const auto& x : d.data) objs.push_back(evaluate(x));
  return make_coslice_diagram(d.shape, d.base, std::move(objs), d.arrows);
}

namespace {

struct ArrowChoice {
  MorId mor;
  std::vector<NatTrans> candidates;
};

bool search_assignment(const FinCategory& shape, const std::vector<ArrowChoice>& choices,
                       std::size_t pos, std::map<MorId, NatTrans>& chosen,
                       const std::vector<NatTrans>& identities) {
  auto value = [&](MorId f) -> const NatTrans* {
    if (shape.is_identity(f)) return &identities[shape.dom(f)];
    auto it = chosen.find(f);
    return it == chosen.end() ? nullptr : &it->second;
  };
  if (pos == choices.size()) return true;
  const MorId f = choices[pos].mor;
  for (const auto& cand : choices[pos].candidates) {
    chosen[f] = cand;
    bool good = true;
    for (std::size_t g = 0; g < shape.num_morphisms() && good; ++g)
      for (std::size_t h = 0; h < shape.num_morphisms() && good; ++h) {
        auto gg = static_cast<MorId>(g);
        auto hh = static_cast<MorId>(h);
        if (shape.cod(hh) != shape.dom(gg)) continue;
        if (gg != f && hh != f) continue;
        auto gh = shape.compose(gg, hh);
        const NatTrans* vg = value(gg);
        const NatTrans* vh = value(hh);
        const NatTrans* vgh = gh ? value(*gh) : nullptr;
        if (!vg || !vh || !vgh) continue;
        if (!(compose(*vg, *vh) == *vgh)) good = false;
      }
    if (good && search_assignment(shape, choices, pos + 1, chosen, identities)) return true;
  }
  chosen.erase(f);
  return false;
}

} // namespace

LiftedDiagram lift_finite_diagram(const GeneratorDiagram& d, const Config& cfg) {
  const auto& shape = d.shape;
  if (d.data.size() != shape.num_objects())
    fail(ErrorKind::ValidationError, "one datum per shape object expected");
  for (const auto& x : d.data)
    if (!(x.base() == d.base)) fail(ErrorKind::IndexMismatch, "datum over a different base");
  CosliceDiagram evaluated = evaluate(d);
  std::vector<Evaluation> evs;
  Mask required = empty_mask(d.base);
  for (const auto& x : d.data) {
    evs.push_back(evaluate_square(x));
    required = mask_union(required, image_mask(x.a));
  }
  auto stages = presentation_stages(d.base, required);
  for (std::size_t p = 0; p < stages.size(); ++p) {
    check_cancel(cfg);
    auto [k, incl] = subpresheaf(d.base, stages[p]);
    std::vector<Pushout> sq;
    std::vector<NatTrans> comp;
    for (std::size_t i = 0; i < d.data.size(); ++i) {
      sq.push_back(pushout(d.data[i].k, corestrict(d.data[i].a, incl)));
      comp.push_back(pushout_mediator(sq[i], evs[i].square.inj_cod,
                                      compose(evs[i].square.inj_base, incl)));
    }
    std::vector<ArrowChoice> choices;
    bool possible = true;
    for (std::size_t f = 0; f < shape.num_morphisms() && possible; ++f) {
      auto ff = static_cast<MorId>(f);
      if (shape.is_identity(ff)) continue;
      const auto i = static_cast<std::size_t>(shape.dom(ff));
      const auto j = static_cast<std::size_t>(shape.cod(ff));
      NatTrans target = compose(evaluated.arrows[f], comp[i]);
      const NatTrans& oi = sq[i].inj_base;
      const NatTrans& oj = sq[j].inj_base;
      std::vector<std::vector<Elem>> fixed(shape.num_objects() ? k.index().num_objects() : 0);
      for (std::size_t a = 0; a < fixed.size(); ++a)
        fixed[a].assign(sq[i].object.size(static_cast<ObjId>(a)), -1);
      for (auto [a, x] : all_elements(k)) {
        Elem& slot = fixed[a][oi(a, x)];
        if (slot >= 0 && slot != oj(a, x)) possible = false;
        slot = oj(a, x);
      }
      if (!possible) break;
      HomSearch s;
      s.allowed = [&](ObjId a, Elem x, Elem y) {
        if (fixed[a][x] >= 0 && fixed[a][x] != y) return false;
        return comp[j](a, y) == target(a, x);
      };
      ArrowChoice ch{ff, enumerate_homs(sq[i].object, sq[j].object, cfg, s)};
      if (ch.candidates.empty()) possible = false;
      choices.push_back(std::move(ch));
    }
    if (!possible) continue;
    std::vector<NatTrans> ids;
    for (const auto& q : sq) ids.push_back(NatTrans::identity(q.object));
    std::map<MorId, NatTrans> chosen;
    if (!search_assignment(shape, choices, 0, chosen, ids)) continue;
    LiftedDiagram r;
    r.a = incl;
    r.position = p;
    r.arrows = std::move(chosen);
    for (std::size_t i = 0; i < sq.size(); ++i) {
      r.objects.push_back({sq[i].inj_base});
      Pushout pushed = pushout(sq[i].inj_base, incl);
      r.comparisons.push_back(pushout_mediator(pushed, comp[i], evs[i].square.inj_base));
    }
    return r;
  }
  fail(ErrorKind::Internal, "the diagram does not lift even at the base itself");
}

GeneratorColimit generator_colimit(const GeneratorDiagram& d, const Config& cfg) {
  GeneratorColimit r;
  r.lifted = lift_finite_diagram(d, cfg);
  const Presheaf& k = r.lifted.a.source();
  CosliceDiagram lifted =
      make_coslice_diagram(d.shape, k, r.lifted.objects, r.lifted.arrows);
  CosliceColimit over_k = coslice_colimit(lifted, cfg);
  r.datum = {over_k.object.arrow, r.lifted.a};
  r.direct = coslice_colimit(evaluate(d), cfg);
  auto iso = find_coslice_iso(evaluate(r.datum), r.direct.object, cfg);
  if (!iso) fail(ErrorKind::Internal, "pushed-forward colimit differs from the direct colimit");
  r.iso = *iso;
  return r;
}

RetractSplitting split_retract(const GeneratorDatum& d, const CosliceObject& retract,
                               const NatTrans& s, const NatTrans& r, const Config& cfg) {
  Evaluation ev = evaluate_square(d);
  CosliceObject c = ev.object();
  if (!(retract.base() == c.base())) fail(ErrorKind::IndexMismatch, "retract over another base");
  make_coslice_map(retract, c, s);
  make_coslice_map(c, retract, r);
  if (!(compose(r, s) == NatTrans::identity(retract.cod())))
    fail(ErrorKind::BadRetraction, "r ∘ s is not the identity");
  NatTrans e = compose(s, r);

  AnelResult anel = anel_factorize(d.k, d.a, compose(e, ev.square.inj_cod), cfg);
  RetractSplitting out;
  out.anel_position = static_cast<std::size_t>(anel.factorization.position);
  NatTrans l0 = anel.mediator;
  const Factorization& f0 = anel.factorization;
  RefinedFactorization ref = refine_parallel_mediators(
      f0, compose(l0, d.k), compose(f0.inner.inj_base, f0.a2), cfg);
  const Factorization& f = ref.factorization;
  l0 = compose(ref.step, l0);
  out.refined_position = static_cast<std::size_t>(f.position);

  NatTrans l = pushout_mediator(f.inner, l0, f.inner.inj_base);
  Quotient q = coequalizer(l, NatTrans::identity(f.inner.object));
  out.datum = {compose(q.q, f.inner.inj_base), f.a1};
  auto iso = find_coslice_iso(evaluate(out.datum), retract, cfg);
  if (!iso) fail(ErrorKind::Internal, "split datum does not evaluate to the retract");
  out.iso = *iso;
  return out;
}

NatTrans fp_coslice_reduction(const GeneratorDatum& d) { return evaluate(d).arrow; }

GeneratorDatum self_presentation(const CosliceObject& f) {
  return {f.arrow, NatTrans::identity(f.base())};
}

// ---------------------------------------------------------------------------

HomColimitReport compare_hom_colimit(const HomColimitInput& in) {
  HomColimitReport rep;
  const std::size_t n = in.homs.size();
  std::vector<std::size_t> offset(n + 1, 0);
  std::vector<std::map<HomKey, std::size_t>> where(n);
  for (std::size_t i = 0; i < n; ++i) {
    offset[i + 1] = offset[i] + in.homs[i].size();
    for (std::size_t h = 0; h < in.homs[i].size(); ++h) where[i][in.homs[i][h]] = offset[i] + h;
  }
  std::vector<std::size_t> parent(offset[n]);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < in.edges.size(); ++e) {
    auto [i, j] = in.edges[e];
    for (std::size_t h = 0; h < in.homs[i].size(); ++h) {
      auto it = where[j].find(in.along(e, in.homs[i][h]));
      if (it == where[j].end()) {
        rep.failure = "hom sets are not closed under the diagram arrows";
        return rep;
      }
      parent[find(offset[i] + h)] = find(it->second);
    }
  }
  std::map<HomKey, std::size_t> apex_index;
  for (std::size_t h = 0; h < in.apex_homs.size(); ++h) apex_index[in.apex_homs[h]] = h;
  std::map<std::size_t, std::size_t> class_image;
  std::vector<char> hit(in.apex_homs.size(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < in.homs[i].size(); ++h) {
      auto it = apex_index.find(in.to_apex(i, in.homs[i][h]));
      if (it == apex_index.end()) {
        rep.failure = "a leg does not land in the apex homs";
        return rep;
      }
      std::size_t cls = find(offset[i] + h);
      auto [c, fresh] = class_image.emplace(cls, it->second);
      if (!fresh && c->second != it->second) {
        rep.failure = "legs disagree on one class";
        return rep;
      }
      hit[it->second] = 1;
    }
  rep.classes = class_image.size();
  std::set<std::size_t> images;
  for (auto [cls, img] : class_image) images.insert(img);
  if (images.size() != class_image.size()) {
    rep.failure = "two classes of maps become equal in the apex";
    return rep;
  }
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    rep.failure = "a map into the apex factors through no vertex";
    return rep;
  }
  rep.ok = true;
  return rep;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> shape_edges(const FinCategory& shape,
                                                             std::vector<MorId>& mors) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t f = 0; f < shape.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    if (shape.is_identity(ff)) continue;
    mors.push_back(ff);
    edges.emplace_back(static_cast<std::size_t>(shape.dom(ff)),
                       static_cast<std::size_t>(shape.cod(ff)));
  }
  return edges;
}

bool fail_with(std::string* failure, std::string msg) {
  if (failure) *failure = std::move(msg);
  return false;
}

} // namespace

bool verify_colimit_by_fp_homs(const Cocone& c, const std::vector<Presheaf>& given,
                               const Config& cfg, std::string* failure) {
  const auto& d = c.diagram;
  if (!is_filtered(d.shape)) return fail_with(failure, "shape is not filtered");
  if (!is_cocone(d, c.legs)) return fail_with(failure, "legs do not form a cocone");
  std::vector<Presheaf> probes = given;
  if (probes.empty()) {
    for (std::size_t a = 0; a < d.index.num_objects(); ++a)
      probes.push_back(representable(d.index, static_cast<ObjId>(a)));
    for (auto& p : enumerate_presheaves(d.index, 2)) probes.push_back(std::move(p));
  }
  std::vector<MorId> mors;
  auto edges = shape_edges(d.shape, mors);
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    check_cancel(cfg);
    const Presheaf& p = probes[pi];
    HomColimitInput in;
    in.edges = edges;
    for (const auto& x : d.objects) {
      std::vector<HomKey> keys;
      for (const auto& h : enumerate_homs(p, x, cfg)) keys.push_back(key_of(h));
      in.homs.push_back(std::move(keys));
    }
    in.along = [&](std::size_t e, const HomKey& h) {
      const NatTrans& t = d.arrows[mors[e]];
      HomKey r = h;
      for (std::size_t a = 0; a < r.size(); ++a)
        for (auto& v : r[a]) v = t(static_cast<ObjId>(a), v);
      return r;
    };
    in.to_apex = [&](std::size_t i, const HomKey& h) {
      HomKey r = h;
      for (std::size_t a = 0; a < r.size(); ++a)
        for (auto& v : r[a]) v = c.legs[i](static_cast<ObjId>(a), v);
      return r;
    };
    for (const auto& h : enumerate_homs(p, c.apex, cfg)) in.apex_homs.push_back(key_of(h));
    auto rep = compare_hom_colimit(in);
    if (!rep.ok) return fail_with(failure, "probe " + std::to_string(pi) + ": " + rep.failure);
  }
  Cocone direct = finite_colimit(d);
  auto med = mediate(direct, c.legs, c.apex);
  if (!med || !med->is_iso())
    return fail_with(failure, "apex differs from the directly computed colimit");
  return true;
}

namespace {

bool coslice_hom_colimit(const std::vector<CosliceObject>& objects,
                         const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                         const std::vector<NatTrans>& edge_maps, const CosliceObject& apex,
                         const std::vector<NatTrans>& legs,
                         const std::vector<CosliceObject>& probes, const Config& cfg,
                         std::string* failure) {
  auto apply = [](const NatTrans& t, HomKey h) {
    for (std::size_t a = 0; a < h.size(); ++a)
      for (auto& v : h[a]) v = t(static_cast<ObjId>(a), v);
    return h;
  };
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    check_cancel(cfg);
    const auto& p = probes[pi];
    HomColimitInput in;
    in.edges = edges;
    for (const auto& x : objects) {
      std::vector<HomKey> keys;
      for (const auto& h : enumerate_coslice_homs(p, x, cfg)) keys.push_back(key_of(h));
      in.homs.push_back(std::move(keys));
    }
    in.along = [&](std::size_t e, const HomKey& h) { return apply(edge_maps[e], h); };
    in.to_apex = [&](std::size_t i, const HomKey& h) { return apply(legs[i], h); };
    for (const auto& h : enumerate_coslice_homs(p, apex, cfg)) in.apex_homs.push_back(key_of(h));
    auto rep = compare_hom_colimit(in);
    if (!rep.ok) return fail_with(failure, "probe " + std::to_string(pi) + ": " + rep.failure);
  }
  return true;
}

} // namespace

bool verify_coslice_colimit_by_fp_homs(const CosliceDiagram& d, const CosliceObject& apex,
                                       const std::vector<NatTrans>& legs,
                                       const std::vector<CosliceObject>& probes,
                                       const Config& cfg, std::string* failure) {
  if (!is_filtered(d.shape)) return fail_with(failure, "shape is not filtered");
  for (std::size_t i = 0; i < legs.size(); ++i)
    if (!(compose(legs[i], d.objects[i].arrow) == apex.arrow))
      return fail_with(failure, "a leg is not under the base");
  std::vector<MorId> mors;
  auto edges = shape_edges(d.shape, mors);
  std::vector<NatTrans> maps;
  for (MorId f : mors) maps.push_back(d.arrows[static_cast<std::size_t>(f)]);
  std::vector<CosliceObject> ps = probes;
  if (ps.empty()) {
    ps.push_back({NatTrans::identity(d.base)});
    for (std::size_t a = 0; a < d.base.index().num_objects(); ++a)
      ps.push_back(cod_star(d.base, representable(d.base.index(), static_cast<ObjId>(a))));
  }
  return coslice_hom_colimit(d.objects, edges, maps, apex, legs, ps, cfg, failure);
}

DecompositionCertificate canonical_decomposition(const CosliceObject& f, std::size_t budget,
                                                 const Config& cfg) {
  DecompositionCertificate cert;
  cert.budget = budget;
  const Presheaf& b = f.base();
  const Presheaf& c = f.cod();
  struct Fragment {
    Mask k, kp;
    GeneratorDatum datum;
    Evaluation ev;
    NatTrans kp_incl;
    NatTrans leg;
  };
  std::vector<Fragment> frag;
  auto b_masks = subpresheaf_masks(b);
  auto c_masks = subpresheaf_masks(c);
  for (const auto& km : b_masks) {
    auto [ksub, kincl] = subpresheaf(b, km);
    Mask img = image_mask(compose(f.arrow, kincl));
    for (const auto& cm : c_masks) {
      check_cancel(cfg);
      if (mask_count(cm) > budget || !mask_contains(cm, img)) continue;
      auto [csub, cincl] = subpresheaf(c, cm);
      Fragment fr;
      fr.k = km;
      fr.kp = cm;
      fr.datum = {corestrict(compose(f.arrow, kincl), cincl), kincl};
      fr.ev = evaluate_square(fr.datum);
      fr.kp_incl = cincl;
      fr.leg = pushout_mediator(fr.ev.square, cincl, f.arrow);
      frag.push_back(std::move(fr));
    }
  }
  cert.fragment_size = frag.size();
  const std::size_t n = frag.size();
  auto leq = [&](std::size_t i, std::size_t j) {
    return mask_contains(frag[j].k, frag[i].k) && mask_contains(frag[j].kp, frag[i].kp);
  };
  std::optional<std::size_t> top;
  for (std::size_t i = 0; i < n; ++i) {
    bool is_top = true;
    for (std::size_t j = 0; j < n && is_top; ++j) is_top = leq(j, i);
    if (is_top) top = i;
  }
  cert.filtered = top.has_value();
  if (!top) {
    cert.failure = "fragment of size " + std::to_string(n) + " has no top at budget " +
                   std::to_string(budget);
    return cert;
  }
  // covering relations generate the poset
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<NatTrans> maps;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq(i, j)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z)
        if (z != i && z != j && leq(i, z) && leq(z, j)) cover = false;
      if (!cover) continue;
      edges.emplace_back(i, j);
      NatTrans kp_step = corestrict(frag[i].kp_incl, frag[j].kp_incl);
      maps.push_back(pushout_mediator(frag[i].ev.square,
                                      compose(frag[j].ev.square.inj_cod, kp_step),
                                      frag[j].ev.square.inj_base));
    }
  std::vector<CosliceObject> objects;
  std::vector<NatTrans> legs;
  for (const auto& fr : frag) {
    objects.push_back(fr.ev.object());
    legs.push_back(fr.leg);
  }
  std::vector<CosliceObject> probes{{NatTrans::identity(b)}};
  for (std::size_t a = 0; a < b.index().num_objects(); ++a)
    probes.push_back(cod_star(b, representable(b.index(), static_cast<ObjId>(a))));
  for (const auto& fr : frag)
    if (mask_count(fr.kp) <= 1) probes.push_back(fr.ev.object());
  cert.probes = probes.size();
  std::string why;
  if (!coslice_hom_colimit(objects, edges, maps, f, legs, probes, cfg, &why)) {
    cert.failure = why;
    return cert;
  }
  if (!legs[*top].is_iso()) {
    cert.failure = "the top of the fragment is not isomorphic to the object";
    return cert;
  }
  cert.ok = true;
  return cert;
}

// ---------------------------------------------------------------------------

FpCertificate fp_certificate(const GeneratorDatum& d, const CosliceChain& chain, int test_stage,
                             const Config& cfg) {
  FpCertificate cert;
  cert.chain = chain.chain.name();
  if (!(chain.base == d.base())) fail(ErrorKind::IndexMismatch, "chain under another base");
  CosliceObject e = evaluate(d);
  const auto bound = static_cast<int>(chain.chain.bound());
  const int n = std::min(test_stage, bound - 1);
  if (n < 0) fail(ErrorKind::StageBoundExceeded, "empty chain");
  CosliceObject target{chain.arrow(static_cast<std::size_t>(n))};
  auto tests = enumerate_coslice_homs(e, target, cfg);
  constexpr std::size_t kMaxTests = 6;
  if (tests.size() > kMaxTests) {
    std::vector<NatTrans> spread;
    for (std::size_t i = 0; i < kMaxTests; ++i)
      spread.push_back(tests[i * (tests.size() - 1) / (kMaxTests - 1)]);
    tests = std::move(spread);
  }
  cert.arrows = tests.size();
  LiftConstraint under = under_base(chain, e.arrow);
  const IndObject& q = chain.chain;
  for (const auto& g : tests) {
    check_cancel(cfg);
    Lift l = lift_through(e.cod(), q, push_to_colimit(g, n), cfg, under);
    if (!(compose(l.map, e.arrow) == chain.arrow(static_cast<std::size_t>(l.stage)))) {
      cert.failure = "lift is not under the base";
      return cert;
    }
    const auto m = static_cast<std::size_t>(std::max(l.agreement, n));
    if (!(compose(q.transition(static_cast<std::size_t>(l.stage), m), l.map) ==
          compose(q.transition(static_cast<std::size_t>(n), m), g))) {
      cert.failure = "lift does not agree with the arrow";
      return cert;
    }
    cert.lift_stages.push_back(l.stage);
    cert.agreement_stages.push_back(l.agreement);
    // other representatives of the same arrow, refined against the lift
    for (int s = 0; s <= n; ++s) {
      CosliceObject at{chain.arrow(static_cast<std::size_t>(s))};
      for (const auto& h : enumerate_coslice_homs(e, at, cfg)) {
        if (s == l.stage && h == l.map) continue;
        bool same = false;
        int meet = std::max(s, n);
        for (; meet < bound && !same; ++meet)
          same = compose(q.transition(static_cast<std::size_t>(s), static_cast<std::size_t>(meet)), h) ==
                 compose(q.transition(static_cast<std::size_t>(n), static_cast<std::size_t>(meet)), g);
        if (!same) continue;
        Lift other{s, h, meet - 1};
        Lift r = refine_lifts(l, other, q, cfg);
        auto rs = static_cast<std::size_t>(r.stage);
        if (!(compose(q.transition(static_cast<std::size_t>(l.stage), rs), l.map) ==
              compose(q.transition(static_cast<std::size_t>(s), rs), h))) {
          cert.failure = "refinement does not equalize the lifts";
          return cert;
        }
        cert.refinement_stages.push_back(r.stage);
      }
    }
  }
  cert.ok = true;
  return cert;
}

} // namespace lfp
