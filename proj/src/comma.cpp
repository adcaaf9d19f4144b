#include "lfp/comma.hpp"

#include <algorithm>
#include <set>

namespace lfp {

CommaObject make_comma_object(const LfpMorphism& u, const Presheaf& a, const Presheaf& b,
                              const NatTrans& f) {
  if (!(a.index() == u.target()) || !(b.index() == u.source()))
    fail(ErrorKind::IndexMismatch, "comma object parts over the wrong indices");
  if (!(f.source() == restrict(u, a)) || !(f.target() == b))
    fail(ErrorKind::ValidationError, "comma arrow must go from restrict(A) to B");
  return {a, b, f};
}

bool is_comma_map(const LfpMorphism& u, const CommaObject& x, const CommaObject& y,
                  const CommaMap& m) {
  return compose(m.beta, x.f) == compose(y.f, restrict(u, m.alpha));
}

CommaMap compose(const CommaMap& g, const CommaMap& f) {
  return {compose(g.alpha, f.alpha), compose(g.beta, f.beta)};
}

CommaMap identity_map(const CommaObject& x) {
  return {NatTrans::identity(x.a), NatTrans::identity(x.b)};
}

namespace {

void for_each_comma_hom(const LfpMorphism& u, const CommaObject& x, const CommaObject& y,
                        const Config& cfg, bool injective,
                        const std::function<bool(const CommaMap&)>& visit) {
  HomSearch outer;
  outer.injective = injective;
  bool stop = false;
  for_each_hom(
      x.a, y.a,
      [&](const std::vector<std::vector<Elem>>& comps) {
        NatTrans alpha(x.a, y.a, comps, false);
        NatTrans ra = restrict(u, alpha);
        const auto& idx = u.source();
        std::vector<std::vector<Elem>> fixed(idx.num_objects());
        for (std::size_t i = 0; i < fixed.size(); ++i)
          fixed[i].assign(x.b.size(static_cast<ObjId>(i)), -1);
        for (auto [i, e] : all_elements(x.f.source())) {
          Elem& slot = fixed[i][x.f(i, e)];
          Elem v = y.f(i, ra(i, e));
          if (slot >= 0 && slot != v) return true;
          slot = v;
        }
        HomSearch inner;
        inner.injective = injective;
        inner.allowed = [&](ObjId i, Elem e, Elem v) { return fixed[i][e] < 0 || fixed[i][e] == v; };
        for_each_hom(
            x.b, y.b,
            [&](const std::vector<std::vector<Elem>>& bc) {
              if (!visit({alpha, NatTrans(x.b, y.b, bc, false)})) stop = true;
              return !stop;
            },
            cfg, inner);
        return !stop;
      },
      cfg, outer);
}

HomKey comma_key(const CommaMap& m) {
  HomKey r = m.alpha.components();
  for (const auto& row : m.beta.components()) r.push_back(row);
  return r;
}

HomKey apply_pair(const CommaMap& t, const CommaMap& h) { return comma_key(compose(t, h)); }

} // namespace

std::vector<CommaMap> enumerate_comma_homs(const LfpMorphism& u, const CommaObject& x,
                                           const CommaObject& y, const Config& cfg) {
  std::vector<CommaMap> out;
  for_each_comma_hom(u, x, y, cfg, false, [&](const CommaMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::optional<CommaMap> find_comma_iso(const LfpMorphism& u, const CommaObject& x,
                                       const CommaObject& y, const Config& cfg) {
  for (std::size_t a = 0; a < u.target().num_objects(); ++a)
    if (x.a.size(static_cast<ObjId>(a)) != y.a.size(static_cast<ObjId>(a))) return std::nullopt;
  for (std::size_t i = 0; i < u.source().num_objects(); ++i)
    if (x.b.size(static_cast<ObjId>(i)) != y.b.size(static_cast<ObjId>(i))) return std::nullopt;
  std::optional<CommaMap> found;
  for_each_comma_hom(u, x, y, cfg, true, [&](const CommaMap& m) {
    found = m;
    return false;
  });
  return found;
}

CommaDiagram make_comma_diagram(const LfpMorphism& u, const FinCategory& shape,
                                std::vector<CommaObject> objects,
                                const std::map<MorId, CommaMap>& arrows) {
  if (objects.size() != shape.num_objects())
    fail(ErrorKind::BadFunctor, "one comma object per shape object expected");
  std::map<MorId, NatTrans> as, bs;
  for (const auto& [f, m] : arrows) {
    as[f] = m.alpha;
    bs[f] = m.beta;
  }
  std::vector<Presheaf> ao, bo;
  for (const auto& o : objects) {
    ao.push_back(o.a);
    bo.push_back(o.b);
  }
  Diagram da = make_diagram(shape, u.target(), ao, as);
  Diagram db = make_diagram(shape, u.source(), bo, bs);
  CommaDiagram d{shape, std::move(objects), {}};
  for (std::size_t f = 0; f < shape.num_morphisms(); ++f) {
    CommaMap m{da.arrows[f], db.arrows[f]};
    auto ff = static_cast<MorId>(f);
    if (!is_comma_map(u, d.objects[shape.dom(ff)], d.objects[shape.cod(ff)], m))
      fail(ErrorKind::BadFunctor, "arrow " + shape.morphism_name(ff) + " is not a comma map");
    d.arrows.push_back(std::move(m));
  }
  return d;
}

namespace {

std::pair<Diagram, Diagram> parts(const LfpMorphism& u, const CommaDiagram& d) {
  Diagram da{d.shape, u.target(), {}, {}};
  Diagram db{d.shape, u.source(), {}, {}};
  for (const auto& o : d.objects) {
    da.objects.push_back(o.a);
    db.objects.push_back(o.b);
  }
  for (const auto& m : d.arrows) {
    da.arrows.push_back(m.alpha);
    db.arrows.push_back(m.beta);
  }
  return {da, db};
}

} // namespace

CommaCocone comma_limit(const LfpMorphism& u, const CommaDiagram& d, const Config& cfg) {
  auto [da, db] = parts(u, d);
  Cone la = finite_limit(da);
  Cone lb = finite_limit(db);
  Presheaf ra = restrict(u, la.apex);
  std::vector<NatTrans> hs;
  for (std::size_t i = 0; i < d.objects.size(); ++i)
    hs.push_back(compose(d.objects[i].f, restrict(u, la.legs[i])));
  auto f = limit_mediator(lb, ra, hs);
  if (!f) fail(ErrorKind::Internal, "restricted limit legs do not form a cone");
  Diagram restricted{d.shape, u.source(), {}, {}};
  for (const auto& x : da.objects) restricted.objects.push_back(restrict(u, x));
  for (const auto& t : da.arrows) restricted.arrows.push_back(restrict(u, t));
  if (!isomorphic(ra, finite_limit(restricted).apex, cfg))
    fail(ErrorKind::Internal, "restriction does not preserve the limit");
  CommaCocone c{{la.apex, lb.apex, *f}, {}};
  for (std::size_t i = 0; i < d.objects.size(); ++i) c.legs.push_back({la.legs[i], lb.legs[i]});
  return c;
}

CommaCocone comma_filtered_colimit(const LfpMorphism& u, const CommaDiagram& d,
                                   const Config&) {
  if (!is_filtered(d.shape)) fail(ErrorKind::NotFiltered, "comma colimit over a non-filtered shape");
  auto [da, db] = parts(u, d);
  Cocone ca = finite_colimit(da);
  Cocone cb = finite_colimit(db);
  Presheaf ra = restrict(u, ca.apex);
  std::vector<NatTrans> ms, hs;
  for (std::size_t i = 0; i < d.objects.size(); ++i) {
    ms.push_back(restrict(u, ca.legs[i]));
    hs.push_back(compose(cb.legs[i], d.objects[i].f));
  }
  auto f = descend(ra, ms, hs, cb.apex);
  if (!f) fail(ErrorKind::Internal, "induced comma arrow is not well defined");
  CommaCocone c{{ca.apex, cb.apex, *f}, {}};
  for (std::size_t i = 0; i < d.objects.size(); ++i) c.legs.push_back({ca.legs[i], cb.legs[i]});
  return c;
}

// ---------------------------------------------------------------------------

CommaObject comma_stage(const CommaChain& c, std::size_t n) {
  return {c.a.stage(n), c.b.stage(n), c.f(n)};
}

CommaChain comma_chain_growing_a(const LfpMorphism& u, const IndObject& x) {
  auto b_stage = [u, x](std::size_t n) { return restrict(u, x.stage(n)); };
  auto b_trans = [u, x](std::size_t n) { return restrict(u, x.transition(n, n + 1)); };
  IndObject b = IndObject::chain("restrict(" + x.name() + ")", u.source(), b_stage, b_trans,
                                 x.bound());
  auto f = [u, x](std::size_t n) { return NatTrans::identity(restrict(u, x.stage(n))); };
  return {"A:" + x.name(), x, b, f};
}

CommaChain comma_chain_growing_b(const LfpMorphism& u, const Presheaf& a, const IndObject& y) {
  Presheaf ra = restrict(u, a);
  auto b_stage = [ra, y](std::size_t n) { return coproduct(ra, y.stage(n)).object; };
  auto b_trans = [ra, y](std::size_t n) {
    Coproduct from = coproduct(ra, y.stage(n));
    Coproduct to = coproduct(ra, y.stage(n + 1));
    return copair(from, to.inj1, compose(to.inj2, y.transition(n, n + 1)));
  };
  IndObject b = IndObject::chain("restrict(A)+" + y.name(), u.source(), b_stage, b_trans,
                                 y.bound());
  auto f = [ra, y](std::size_t n) { return coproduct(ra, y.stage(n)).inj1; };
  return {"B:" + y.name(), IndObject::constant(a, y.bound()), b, f};
}

CommaChain comma_chain_growing_both(const LfpMorphism& u, const IndObject& x, const IndObject& y) {
  auto b_stage = [u, x, y](std::size_t n) {
    return coproduct(restrict(u, x.stage(n)), y.stage(n)).object;
  };
  auto b_trans = [u, x, y](std::size_t n) {
    Coproduct from = coproduct(restrict(u, x.stage(n)), y.stage(n));
    Coproduct to = coproduct(restrict(u, x.stage(n + 1)), y.stage(n + 1));
    return copair(from, compose(to.inj1, restrict(u, x.transition(n, n + 1))),
                  compose(to.inj2, y.transition(n, n + 1)));
  };
  IndObject b = IndObject::chain("restrict(" + x.name() + ")+" + y.name(), u.source(), b_stage,
                                 b_trans, std::min(x.bound(), y.bound()));
  auto f = [u, x, y](std::size_t n) {
    return coproduct(restrict(u, x.stage(n)), y.stage(n)).inj1;
  };
  return {"AB:" + x.name() + "," + y.name(), x, b, f};
}

std::vector<CommaChain> default_comma_chains(const LfpMorphism& u, const Presheaf& fixed_a,
                                             std::size_t bound) {
  std::vector<CommaChain> out;
  auto xs = default_families(u.target(), bound);
  auto ys = default_families(u.source(), bound);
  for (const auto& x : xs) out.push_back(comma_chain_growing_a(u, x));
  for (const auto& y : ys) out.push_back(comma_chain_growing_b(u, fixed_a, y));
  for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i)
    out.push_back(comma_chain_growing_both(u, xs[i], ys[i]));
  return out;
}

// ---------------------------------------------------------------------------

CommaEvaluation evaluate_comma_square(const LfpMorphism& u, const CommaGeneratorDatum& d) {
  if (!(d.a.target() == restrict(u, d.m)))
    fail(ErrorKind::ValidationError, "a must land in restrict(M)");
  if (!(d.k.source() == d.a.source()))
    fail(ErrorKind::IndexMismatch, "datum arrows have different sources");
  Pushout p = pushout(d.k, d.a);
  return {p, {d.m, p.object, p.inj_base}};
}

CommaObject evaluate_comma_datum(const LfpMorphism& u, const CommaGeneratorDatum& d) {
  return evaluate_comma_square(u, d).object;
}

CommaObject comma_cod_star(const LfpMorphism& u, const Presheaf& b) {
  Presheaf zero(u.target());
  Coproduct c = coproduct(restrict(u, zero), b);
  return {zero, c.object, c.inj1};
}

bool check_comma_cod_star_adjunction(const LfpMorphism& u, const Presheaf& b,
                                     const CommaObject& y, const Config& cfg) {
  CommaObject x = comma_cod_star(u, b);
  Coproduct c = coproduct(restrict(u, x.a), b);
  auto left = enumerate_comma_homs(u, x, y, cfg);
  auto right = enumerate_homs(b, y.b, cfg);
  if (left.size() != right.size()) return false;
  std::set<NatTrans> images;
  for (const auto& m : left) images.insert(compose(m.beta, c.inj2));
  if (images.size() != left.size()) return false;
  // cod(ε_y) ∘ η_{cod y} = 1 with ε_y = (!, [y.f ∘ restrict(!), 1])
  CommaObject top = comma_cod_star(u, y.b);
  Coproduct ct = coproduct(restrict(u, top.a), y.b);
  CommaMap eps{NatTrans::from_empty(top.a, y.a),
               copair(ct, compose(y.f, restrict(u, NatTrans::from_empty(top.a, y.a))),
                      NatTrans::identity(y.b))};
  if (!is_comma_map(u, top, y, eps)) return false;
  if (!(compose(eps.beta, ct.inj2) == NatTrans::identity(y.b))) return false;
  // ε_{cod* B} ∘ cod*(η_B) = 1
  CommaObject twice = comma_cod_star(u, x.b);
  Coproduct c2 = coproduct(restrict(u, twice.a), x.b);
  CommaMap lift_eta{NatTrans::identity(x.a), copair(c, c2.inj1, compose(c2.inj2, c.inj2))};
  CommaMap eps_x{NatTrans::from_empty(twice.a, x.a),
                 copair(c2, compose(x.f, restrict(u, NatTrans::from_empty(twice.a, x.a))),
                        NatTrans::identity(x.b))};
  return compose(eps_x, lift_eta) == identity_map(x);
}

CommaObject one_comma(const LfpMorphism& u, const Presheaf& a) {
  Presheaf ra = restrict(u, a);
  return {a, ra, NatTrans::identity(ra)};
}

OneStar one_star(const LfpMorphism& u, const CommaObject& f) {
  NatTrans eps = counit(u, f.a);
  NatTrans lf = lan(u, f.f);
  return {pushout(eps, lf)};
}

bool check_one_star_adjunction(const LfpMorphism& u, const CommaObject& f, const Presheaf& a2,
                               const Config& cfg) {
  OneStar p = one_star(u, f);
  CommaObject target = one_comma(u, a2);
  auto left = enumerate_homs(p.object(), a2, cfg);
  auto right = enumerate_comma_homs(u, f, target, cfg);
  if (left.size() != right.size()) return false;
  NatTrans eta_b = unit(u, f.b);
  std::set<HomKey> right_keys;
  for (const auto& m : right) right_keys.insert(comma_key(m));
  std::set<HomKey> images;
  for (const auto& psi : left) {
    CommaMap m{compose(psi, p.square.inj_cod),
               compose(restrict(u, compose(psi, p.square.inj_base)), eta_b)};
    if (!is_comma_map(u, f, target, m)) return false;
    HomKey key = comma_key(m);
    if (!right_keys.count(key)) return false;
    images.insert(key);
  }
  if (images.size() != left.size()) return false;
  // 1(ε_A) ∘ η_{1 A} = 1 on one_comma(A′)
  OneStar q = one_star(u, target);
  NatTrans eps = pushout_mediator(q.square, NatTrans::identity(a2), counit(u, a2));
  CommaMap eta{q.square.inj_cod,
               compose(restrict(u, q.square.inj_base), unit(u, target.b))};
  CommaMap one_eps{eps, restrict(u, eps)};
  return compose(one_eps, eta) == identity_map(target);
}

bool check_projection_adjunction(const LfpMorphism& u, const Presheaf& a, const CommaObject& g,
                                 const Config& cfg) {
  auto left = enumerate_comma_homs(u, one_comma(u, a), g, cfg);
  auto right = enumerate_homs(a, g.a, cfg);
  if (left.size() != right.size()) return false;
  std::set<NatTrans> images;
  for (const auto& m : left) images.insert(m.alpha);
  return images.size() == left.size();
}

// ---------------------------------------------------------------------------

CommaFpCertificate comma_fp_certificate(const LfpMorphism& u, const CommaGeneratorDatum& d,
                                        const CommaChain& chain, int test_stage,
                                        const Config& cfg) {
  CommaFpCertificate cert;
  cert.chain = chain.name;
  CommaEvaluation ev = evaluate_comma_square(u, d);
  const CommaObject& e = ev.object;
  const auto bound = static_cast<int>(std::min(chain.a.bound(), chain.b.bound()));
  const int n = std::min(test_stage, bound - 1);
  if (n < 0) fail(ErrorKind::StageBoundExceeded, "empty chain");
  auto tests = enumerate_comma_homs(u, e, comma_stage(chain, static_cast<std::size_t>(n)), cfg);
  constexpr std::size_t kMaxTests = 6;
  if (tests.size() > kMaxTests) {
    std::vector<CommaMap> spread;
    for (std::size_t i = 0; i < kMaxTests; ++i)
      spread.push_back(tests[i * (tests.size() - 1) / (kMaxTests - 1)]);
    tests = std::move(spread);
  }
  cert.arrows = tests.size();
  auto ta = [&](int s, int t) {
    return chain.a.transition(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
  };
  auto tb = [&](int s, int t) {
    return chain.b.transition(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
  };
  // preimages of B-elements of the evaluation under its arrow
  const auto& idx = u.source();
  std::vector<std::vector<std::vector<Elem>>> pre(idx.num_objects());
  for (std::size_t i = 0; i < idx.num_objects(); ++i) pre[i].resize(e.b.size(static_cast<ObjId>(i)));
  for (auto [i, x] : all_elements(e.f.source())) pre[i][e.f(i, x)].push_back(x);

  for (const auto& g : tests) {
    check_cancel(cfg);
    Lift la = lift_through(e.a, chain.a, push_to_colimit(g.alpha, n), cfg);
    std::map<int, NatTrans> wanted; // stage → f_s ∘ restrict(advanced α)
    auto required = [&](int s) -> const NatTrans& {
      auto it = wanted.find(s);
      if (it == wanted.end())
        it = wanted
                 .emplace(s, compose(chain.f(static_cast<std::size_t>(s)),
                                     restrict(u, compose(ta(la.stage, s), la.map))))
                 .first;
      return it->second;
    };
    LiftConstraint square = [&](int s, ObjId i, Elem x, Elem y) {
      if (s < la.stage) return false;
      const NatTrans& w = required(s);
      for (Elem p : pre[i][x])
        if (w(i, p) != y) return false;
      return true;
    };
    Lift lb = lift_through(e.b, chain.b, push_to_colimit(g.beta, n), cfg, square);
    const int s = std::max(la.stage, lb.stage);
    CommaMap lifted{compose(ta(la.stage, s), la.map), compose(tb(lb.stage, s), lb.map)};
    if (!is_comma_map(u, e, comma_stage(chain, static_cast<std::size_t>(s)), lifted)) {
      cert.failure = "lifted pair is not a comma map";
      return cert;
    }
    const int m = std::max({s, n, la.agreement, lb.agreement});
    if (m >= bound) fail(ErrorKind::StageBoundExceeded, "agreement past the stage bound");
    if (!(compose(ta(s, m), lifted.alpha) == compose(ta(n, m), g.alpha)) ||
        !(compose(tb(s, m), lifted.beta) == compose(tb(n, m), g.beta))) {
      cert.failure = "lift does not agree with the arrow";
      return cert;
    }
    cert.m_stages.push_back(la.stage);
    cert.k_stages.push_back(lb.stage);
    cert.lift_stages.push_back(s);
    // other representatives of the same arrow, refined jointly
    for (int r = 0; r <= n; ++r) {
      for (const auto& h :
           enumerate_comma_homs(u, e, comma_stage(chain, static_cast<std::size_t>(r)), cfg)) {
        if (r == s && h == lifted) continue;
        int meet = std::max(r, n);
        bool same = false;
        for (; meet < bound && !same; ++meet)
          same = compose(ta(r, meet), h.alpha) == compose(ta(n, meet), g.alpha) &&
                 compose(tb(r, meet), h.beta) == compose(tb(n, meet), g.beta);
        if (!same) continue;
        int q = std::max(r, s);
        for (; q < bound; ++q)
          if (compose(ta(r, q), h.alpha) == compose(ta(s, q), lifted.alpha) &&
              compose(tb(r, q), h.beta) == compose(tb(s, q), lifted.beta))
            break;
        if (q >= bound) fail(ErrorKind::StageBoundExceeded, "parallel lifts not equalized");
        cert.refinement_stages.push_back(q);
      }
    }
  }
  cert.ok = true;
  return cert;
}

// ---------------------------------------------------------------------------

DecompositionCertificate comma_decomposition(const LfpMorphism& u, const CommaObject& f,
                                             std::size_t budget, const Config& cfg) {
  DecompositionCertificate cert;
  cert.budget = budget;
  const auto& ij = u.source();
  struct Fragment {
    Mask m, kp;
    CommaGeneratorDatum datum;
    CommaEvaluation ev;
    NatTrans m_incl, kp_incl;
    CommaMap leg;
  };
  std::vector<Fragment> frag;
  auto a_masks = subpresheaf_masks(f.a);
  auto b_masks = subpresheaf_masks(f.b);
  for (const auto& am : a_masks) {
    auto [msub, mincl] = subpresheaf(f.a, am);
    Presheaf rm = restrict(u, msub);
    NatTrans rincl = restrict(u, mincl);
    NatTrans fm = compose(f.f, rincl);
    for (const auto& bm : b_masks) {
      check_cancel(cfg);
      if (mask_count(am) + mask_count(bm) > budget) continue;
      Mask km(ij.num_objects());
      for (std::size_t i = 0; i < km.size(); ++i)
        for (std::size_t x = 0; x < rm.size(static_cast<ObjId>(i)); ++x)
          km[i].push_back(bm[i][fm(static_cast<ObjId>(i), static_cast<Elem>(x))]);
      auto [ksub, kincl] = subpresheaf(rm, km);
      auto [kpsub, kpincl] = subpresheaf(f.b, bm);
      Fragment fr;
      fr.m = am;
      fr.kp = bm;
      fr.datum = {msub, corestrict(compose(fm, kincl), kpincl), kincl};
      fr.ev = evaluate_comma_square(u, fr.datum);
      fr.m_incl = mincl;
      fr.kp_incl = kpincl;
      fr.leg = {mincl, pushout_mediator(fr.ev.square, kpincl, fm)};
      frag.push_back(std::move(fr));
    }
  }
  const std::size_t n = frag.size();
  cert.fragment_size = n;
  auto leq = [&](std::size_t i, std::size_t j) {
    return mask_contains(frag[j].m, frag[i].m) && mask_contains(frag[j].kp, frag[i].kp);
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
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<CommaMap> maps;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq(i, j)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z)
        if (z != i && z != j && leq(i, z) && leq(z, j)) cover = false;
      if (!cover) continue;
      edges.emplace_back(i, j);
      NatTrans ma = corestrict(frag[i].m_incl, frag[j].m_incl);
      NatTrans kp = corestrict(frag[i].kp_incl, frag[j].kp_incl);
      NatTrans mb = pushout_mediator(frag[i].ev.square, compose(frag[j].ev.square.inj_cod, kp),
                                     compose(frag[j].ev.square.inj_base, restrict(u, ma)));
      maps.push_back({ma, mb});
    }
  std::vector<CommaObject> probes;
  for (std::size_t i = 0; i < ij.num_objects(); ++i)
    probes.push_back(comma_cod_star(u, representable(ij, static_cast<ObjId>(i))));
  for (std::size_t j = 0; j < u.target().num_objects(); ++j)
    probes.push_back(one_comma(u, representable(u.target(), static_cast<ObjId>(j))));
  for (const auto& fr : frag)
    if (mask_count(fr.m) + mask_count(fr.kp) <= 1) probes.push_back(fr.ev.object);
  cert.probes = probes.size();
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    check_cancel(cfg);
    HomColimitInput in;
    in.edges = edges;
    for (const auto& fr : frag) {
      std::vector<HomKey> keys;
      for (const auto& h : enumerate_comma_homs(u, probes[pi], fr.ev.object, cfg))
        keys.push_back(comma_key(h));
      in.homs.push_back(std::move(keys));
    }
    auto unkey = [&](const HomKey& k, const CommaObject& target) {
      const auto nj = u.target().num_objects();
      HomKey ka(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(nj));
      HomKey kb(k.begin() + static_cast<std::ptrdiff_t>(nj), k.end());
      return CommaMap{NatTrans(probes[pi].a, target.a, ka, false),
                      NatTrans(probes[pi].b, target.b, kb, false)};
    };
    in.along = [&](std::size_t e, const HomKey& h) {
      return apply_pair(maps[e], unkey(h, frag[edges[e].first].ev.object));
    };
    in.to_apex = [&](std::size_t i, const HomKey& h) {
      return apply_pair(frag[i].leg, unkey(h, frag[i].ev.object));
    };
    for (const auto& h : enumerate_comma_homs(u, probes[pi], f, cfg))
      in.apex_homs.push_back(comma_key(h));
    auto rep = compare_hom_colimit(in);
    if (!rep.ok) {
      cert.failure = "probe " + std::to_string(pi) + ": " + rep.failure;
      return cert;
    }
  }
  if (!frag[*top].leg.alpha.is_iso() || !frag[*top].leg.beta.is_iso()) {
    cert.failure = "the top of the fragment is not isomorphic to the object";
    return cert;
  }
  cert.ok = true;
  return cert;
}

// ---------------------------------------------------------------------------

CommaRetractSplitting comma_split_retract(const LfpMorphism& u, const CommaGeneratorDatum& d,
                                          const CommaObject& retract, const CommaMap& s,
                                          const CommaMap& r, const Config& cfg) {
  CommaEvaluation ev = evaluate_comma_square(u, d);
  if (!is_comma_map(u, retract, ev.object, s) || !is_comma_map(u, ev.object, retract, r))
    fail(ErrorKind::ValidationError, "retraction maps are not comma maps");
  if (!(compose(r, s) == identity_map(retract)))
    fail(ErrorKind::BadRetraction, "r ∘ s is not the identity");
  // transfer to objects under restrict(A_R)
  NatTrans rra = restrict(u, r.alpha);
  GeneratorDatum moved{d.k, compose(rra, d.a)};
  Evaluation mv = evaluate_square(moved);
  NatTrans to_moved = pushout_mediator(ev.square, mv.square.inj_cod,
                                       compose(mv.square.inj_base, rra));
  NatTrans s2 = compose(to_moved, s.beta);
  NatTrans r2 = pushout_mediator(mv.square, compose(r.beta, ev.square.inj_cod), retract.f);
  CommaRetractSplitting out;
  out.coslice = split_retract(moved, {retract.f}, s2, r2, cfg);
  out.datum = {retract.a, out.coslice.datum.k, out.coslice.datum.a};
  CommaObject got = evaluate_comma_datum(u, out.datum);
  CommaMap iso{NatTrans::identity(retract.a), out.coslice.iso};
  if (!is_comma_map(u, got, retract, iso) || !iso.beta.is_iso())
    fail(ErrorKind::Internal, "split comma datum does not evaluate to the retract");
  out.iso = iso;
  return out;
}

// ---------------------------------------------------------------------------

TwoCellFactorization factor_two_cell(const LfpMorphism& u, const TwoCell& cell,
                                     const Config& cfg) {
  const auto& c = cell.c;
  const auto no = c.num_objects();
  const auto nm = c.num_morphisms();
  if (cell.g_objects.size() != no || cell.h_objects.size() != no || cell.lambda.size() != no ||
      cell.g_arrows.size() != nm || cell.h_arrows.size() != nm)
    fail(ErrorKind::ValidationError, "two-cell tables do not match the category");
  std::map<MorId, NatTrans> gm, hm;
  for (std::size_t f = 0; f < nm; ++f) {
    gm[static_cast<MorId>(f)] = cell.g_arrows[f];
    hm[static_cast<MorId>(f)] = cell.h_arrows[f];
  }
  try {
    make_diagram(c, u.target(), cell.g_objects, gm);
    make_diagram(c, u.source(), cell.h_objects, hm);
  } catch (const LfpError& e) {
    fail(ErrorKind::ValidationError, std::string("two-cell functor: ") + e.what());
  }
  for (std::size_t o = 0; o < no; ++o)
    if (!(cell.lambda[o].source() == restrict(u, cell.g_objects[o])) ||
        !(cell.lambda[o].target() == cell.h_objects[o]))
      fail(ErrorKind::ValidationError, "λ component with the wrong endpoints");
  for (std::size_t f = 0; f < nm; ++f) {
    auto ff = static_cast<MorId>(f);
    if (!(compose(cell.h_arrows[f], cell.lambda[c.dom(ff)]) ==
          compose(cell.lambda[c.cod(ff)], restrict(u, cell.g_arrows[f]))))
      fail(ErrorKind::ValidationError, "λ is not natural at " + c.morphism_name(ff));
  }

  TwoCellFactorization out;
  for (std::size_t o = 0; o < no; ++o)
    out.objects.push_back({cell.g_objects[o], cell.h_objects[o], cell.lambda[o]});
  for (std::size_t f = 0; f < nm; ++f) out.arrows.push_back({cell.g_arrows[f], cell.h_arrows[f]});
  bool strict = true;
  for (std::size_t f = 0; f < nm; ++f) {
    auto ff = static_cast<MorId>(f);
    strict = strict && is_comma_map(u, out.objects[c.dom(ff)], out.objects[c.cod(ff)], out.arrows[f]);
  }
  out.projections_strict = strict;
  out.whiskering = true;
  for (std::size_t o = 0; o < no; ++o)
    out.whiskering = out.whiskering && out.objects[o].f == cell.lambda[o];

  // Candidates: object parts G(C), H(C) with any arrow between their
  // restrictions, and any comma map per morphism; then the functor laws.
  std::vector<std::vector<NatTrans>> obj_choices(no);
  for (std::size_t o = 0; o < no; ++o)
    obj_choices[o] = enumerate_homs(restrict(u, cell.g_objects[o]), cell.h_objects[o], cfg);
  std::vector<NatTrans> fs(no);
  std::vector<CommaObject> objs(no);
  std::vector<CommaMap> arrows(nm);
  std::function<void(std::size_t)> pick_arrow = [&](std::size_t f) {
    check_cancel(cfg);
    if (f == nm) {
      for (std::size_t g = 0; g < nm; ++g)
        for (std::size_t h = 0; h < nm; ++h) {
          auto gh = c.compose(static_cast<MorId>(g), static_cast<MorId>(h));
          if (gh && !(compose(arrows[g], arrows[h]) == arrows[*gh])) return;
        }
      ++out.functors;
      bool proj = true, whisk = true;
      for (std::size_t o = 0; o < no; ++o) whisk = whisk && objs[o].f == cell.lambda[o];
      for (std::size_t g = 0; g < nm; ++g)
        proj = proj && arrows[g].alpha == cell.g_arrows[g] && arrows[g].beta == cell.h_arrows[g];
      if (proj && whisk) ++out.satisfying;
      return;
    }
    auto ff = static_cast<MorId>(f);
    const auto& x = objs[c.dom(ff)];
    const auto& y = objs[c.cod(ff)];
    if (c.is_identity(ff)) {
      arrows[f] = identity_map(x);
      pick_arrow(f + 1);
      return;
    }
    for (const auto& m : enumerate_comma_homs(u, x, y, cfg)) {
      arrows[f] = m;
      pick_arrow(f + 1);
    }
  };
  std::function<void(std::size_t)> pick_object = [&](std::size_t o) {
    if (o == no) {
      pick_arrow(0);
      return;
    }
    for (const auto& f : obj_choices[o]) {
      objs[o] = {cell.g_objects[o], cell.h_objects[o], f};
      pick_object(o + 1);
    }
  };
  pick_object(0);
  return out;
}

} // namespace lfp
