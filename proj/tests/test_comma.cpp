#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace lfp;
using th::graph;
using th::set;

namespace {

const FinCategory& graphs() {
  static const FinCategory g = catalog::parallel_pair();
  return g;
}

bool iso(const LfpMorphism& u, const CommaObject& x, const CommaObject& y) {
  return find_comma_iso(u, x, y).has_value();
}

/// A vertex-labelled graph: f sends each vertex of a to a point of b.
CommaObject labelled(const LfpMorphism& u, const Presheaf& a, const Presheaf& b,
                     const std::map<std::string, std::string>& f) {
  return make_comma_object(u, a, b, th::smap(restrict(u, a), b, f));
}

std::vector<NatTrans> identities_of(const FinCategory& c, const std::vector<Presheaf>& objs,
                                    const std::map<std::string, NatTrans>& named) {
  std::vector<NatTrans> out(c.num_morphisms());
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    auto mm = static_cast<MorId>(m);
    if (c.is_identity(mm)) out[m] = NatTrans::identity(objs[c.dom(mm)]);
    else out[m] = named.at(c.morphism_name(mm));
  }
  return out;
}

} // namespace

TEST_CASE("comma objects and maps") {
  LfpMorphism u = th::vertex_inclusion();
  Presheaf a = graph({"a", "b"}, {{"x", "a", "b"}});
  CommaObject o = labelled(u, a, set({"p", "q"}), {{"a", "p"}, {"b", "q"}});
  CHECK(enumerate_comma_homs(u, o, o).size() == 1);
  CHECK(is_comma_map(u, o, o, identity_map(o)));
  CHECK_THROWS_AS(make_comma_object(u, a, set({"p"}), NatTrans::identity(restrict(u, a))), LfpError);
  CommaObject collapsed = labelled(u, a, set({"p"}), {{"a", "p"}, {"b", "p"}});
  CHECK(enumerate_comma_homs(u, o, collapsed).size() == 1);
  CHECK(enumerate_comma_homs(u, collapsed, o).empty());
}

TEST_CASE("comma limits") {
  LfpMorphism u = th::vertex_inclusion();
  Presheaf a = graph({"a", "b"}, {{"x", "a", "b"}});
  CommaObject o = labelled(u, a, set({"p", "q"}), {{"a", "p"}, {"b", "q"}});
  CommaDiagram one = make_comma_diagram(u, catalog::terminal(), {o}, {});
  CHECK(iso(u, comma_limit(u, one).apex, o));

  CommaObject l = labelled(u, graph({"c"}, {{"y", "c", "c"}}), set({"r"}), {{"c", "r"}});
  CommaDiagram pair = make_comma_diagram(u, catalog::discrete(2), {o, l}, {});
  CommaCocone prod = comma_limit(u, pair);
  CHECK(th::sizes(prod.apex.a) == std::vector<std::size_t>{1, 2});
  CHECK(prod.apex.b.total_size() == 2);
  // every cone into the two factors goes through the product exactly once
  for (const auto& m0 : enumerate_comma_homs(u, o, o))
    for (const auto& m1 : enumerate_comma_homs(u, o, l)) {
      std::size_t through = 0;
      for (const auto& h : enumerate_comma_homs(u, o, prod.apex))
        through += compose(prod.legs[0], h) == m0 && compose(prod.legs[1], h) == m1;
      CHECK(through == 1);
    }

  CommaDiagram empty = make_comma_diagram(u, catalog::discrete(0), {}, {});
  CommaCocone term = comma_limit(u, empty);
  CHECK(th::sizes(term.apex.a) == std::vector<std::size_t>{1, 1});
  CHECK(term.apex.b.total_size() == 1);
}

TEST_CASE("comma filtered colimits") {
  LfpMorphism u = th::vertex_inclusion();
  Presheaf a = graph({"a", "b"}, {{"x", "a", "b"}});
  CommaObject o = labelled(u, a, set({"p", "q"}), {{"a", "p"}, {"b", "q"}});
  auto l2 = catalog::linear(2);
  CommaDiagram cst = make_comma_diagram(u, l2, {o, o}, {{l2.morphism("0<1"), identity_map(o)}});
  CHECK(iso(u, comma_filtered_colimit(u, cst).apex, o));

  // l → c ← r with both vertices landing on one labelled edge
  auto cs = catalog::cospan();
  CommaObject v = labelled(u, graph({"a"}), set({"p"}), {{"a", "p"}});
  std::vector<CommaObject> objs(3);
  objs[cs.object("l")] = v;
  objs[cs.object("r")] = v;
  objs[cs.object("c")] = o;
  CommaMap into{th::gmap(v.a, o.a, {{"a", "a"}}), th::smap(v.b, o.b, {{"p", "p"}})};
  CommaMap into2{th::gmap(v.a, o.a, {{"a", "b"}}), th::smap(v.b, o.b, {{"p", "q"}})};
  CommaDiagram poset = make_comma_diagram(u, cs, objs, {{cs.morphism("p"), into}, {cs.morphism("q"), into2}});
  CommaCocone c = comma_filtered_colimit(u, poset);
  std::vector<Presheaf> as, bs;
  std::map<MorId, NatTrans> aa, ba;
  for (const auto& x : objs) as.push_back(x.a), bs.push_back(x.b);
  for (auto [m, cm] : {std::pair{cs.morphism("p"), into}, std::pair{cs.morphism("q"), into2}}) {
    aa[m] = cm.alpha;
    ba[m] = cm.beta;
  }
  CHECK(isomorphic(c.apex.a, finite_colimit(make_diagram(cs, graphs(), as, aa)).apex));
  CHECK(isomorphic(c.apex.b, finite_colimit(make_diagram(cs, catalog::terminal(), bs, ba)).apex));

  // stages of a chain growing in A
  IndObject paths = chain_family("growing-path-graph", {{"k", 1}}, graphs(), 8);
  CommaChain grow = comma_chain_growing_a(u, paths);
  for (std::size_t n = 0; n < 3; ++n) {
    CommaObject s = comma_stage(grow, n);
    CHECK(isomorphic(s.a, paths.stage(n)));
    CHECK(s.f.is_iso());
  }
}

TEST_CASE("evaluate_comma_datum examples") {
  LfpMorphism u = th::vertex_inclusion();
  Presheaf m = graph({"a", "b"}, {{"x", "a", "b"}});
  Presheaf rm = restrict(u, m);
  Presheaf k = set({"p"});
  NatTrans a = th::smap(k, rm, {{"p", "b"}});
  CommaObject id = evaluate_comma_datum(u, {m, NatTrans::identity(k), a});
  CHECK(id.f.is_iso());
  CHECK(id.a == m);

  Presheaf e = set({});
  Presheaf kp = set({"s", "t"});
  CommaObject free = evaluate_comma_datum(u, {m, NatTrans::from_empty(e, kp), NatTrans::from_empty(e, rm)});
  CHECK(free.b.total_size() == 4);
  CHECK(free.f.is_injective());

  NatTrans glue = th::smap(k, kp, {{"p", "s"}});
  CommaEvaluation ev = evaluate_comma_square(u, {m, glue, a});
  CHECK(ev.object.b.total_size() == 3);
  CHECK(oracle::universal(span_diagram(glue, a), ev.square.object,
                          {ev.square.inj_cod, compose(ev.square.inj_cod, glue), ev.square.inj_base},
                          enumerate_presheaves(catalog::terminal(), 4)));
}

TEST_CASE("comma cod_star") {
  LfpMorphism u = th::vertex_inclusion();
  CommaObject e = comma_cod_star(u, set({}));
  CHECK(e.a.total_size() == 0);
  CHECK(e.b.total_size() == 0);

  // u identity: the comma object is the coslice object under the empty presheaf
  LfpMorphism id{FinFunctor::identity(graphs())};
  Presheaf b = graph({"a", "b"}, {{"x", "a", "b"}});
  CommaObject c = comma_cod_star(id, b);
  CHECK(isomorphic(c.b, cod_star(Presheaf(graphs()), b).cod()));

  Presheaf bb = set({"p", "q"});
  CommaObject cs = comma_cod_star(u, bb);
  CHECK(cs.b.total_size() == 2);
  std::mt19937_64 rng(113);
  for (int rep = 0; rep < 30; ++rep) {
    Presheaf ya = random_presheaf(graphs(), 3, rng);
    Presheaf yb = random_presheaf(catalog::terminal(), 2, rng);
    auto f = random_hom(restrict(u, ya), yb, rng);
    if (!f) continue;
    CommaObject y = make_comma_object(u, ya, yb, *f);
    CHECK(check_comma_cod_star_adjunction(u, bb, y));
    CHECK(enumerate_comma_homs(u, cs, y).size() == count_homs(bb, yb));
  }
}

TEST_CASE("one_star examples") {
  LfpMorphism u = th::vertex_inclusion();
  Presheaf a = graph({"a", "b"}, {{"x", "a", "b"}});
  CHECK(isomorphic(one_star(u, one_comma(u, a)).object(), a));
  for (const auto& k : enumerate_presheaves(catalog::terminal(), 3))
    CHECK(isomorphic(one_star(u, comma_cod_star(u, k)).object(), lan(u, k)));

  std::mt19937_64 rng(127);
  std::size_t checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    Presheaf fa = random_presheaf(graphs(), 2, rng);
    Presheaf fb = random_presheaf(catalog::terminal(), 2, rng);
    auto f = random_hom(restrict(u, fa), fb, rng);
    if (!f) continue;
    CommaObject fo = make_comma_object(u, fa, fb, *f);
    Presheaf a2 = random_presheaf(graphs(), 3, rng);
    CHECK(check_one_star_adjunction(u, fo, a2));
    CHECK(check_projection_adjunction(u, a2, fo));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("comma fp certificates") {
  LfpMorphism u = th::vertex_inclusion();
  Presheaf m = graph({"a"});
  Presheaf k = set({"p"});
  Presheaf kp = set({"p", "q"});
  CommaGeneratorDatum d{m, th::smap(k, kp, {{"p", "p"}}), th::smap(k, restrict(u, m), {{"p", "a"}})};

  CommaObject target = labelled(u, graph({"a", "b"}, {{"x", "a", "b"}}), set({"s", "t"}),
                                {{"a", "s"}, {"b", "t"}});
  CommaChain cst{"constant", IndObject::constant(target.a, 8), IndObject::constant(target.b, 8),
                 [target](std::size_t) { return target.f; }};
  CommaFpCertificate c0 = comma_fp_certificate(u, d, cst, 2);
  CAPTURE(c0.failure);
  CHECK(c0.ok);
  for (int s : c0.lift_stages) CHECK(s == 0);

  IndObject sets = chain_family("growing-set", {{"k", 1}}, catalog::terminal(), 16);
  CommaFpCertificate cb = comma_fp_certificate(u, d, comma_chain_growing_b(u, m, sets), 2);
  CAPTURE(cb.failure);
  CHECK(cb.ok);
  IndObject paths = chain_family("growing-path-graph", {{"k", 1}}, graphs(), 16);
  CommaFpCertificate ca = comma_fp_certificate(u, d, comma_chain_growing_a(u, paths), 2);
  CAPTURE(ca.failure);
  CHECK(ca.ok);
  CHECK(ca.arrows > 0);
  for (const auto& ch : default_comma_chains(u, m, 16)) {
    CommaFpCertificate c = comma_fp_certificate(u, d, ch, 2);
    CAPTURE(ch.name);
    CAPTURE(c.failure);
    CHECK(c.ok);
  }
}

TEST_CASE("comma decompositions") {
  LfpMorphism u = th::vertex_inclusion();
  Presheaf m = graph({"a", "b"}, {{"x", "a", "b"}});
  Presheaf k = set({"p"});
  CommaGeneratorDatum d{m, th::smap(k, set({"p", "q"}), {{"p", "p"}}),
                        th::smap(k, restrict(u, m), {{"p", "a"}})};
  CommaObject f = evaluate_comma_datum(u, d);
  DecompositionCertificate c6 = comma_decomposition(u, f, 6);
  CAPTURE(c6.failure);
  CHECK(c6.ok);
  CHECK(comma_decomposition(u, f, 8).ok);
  CHECK(comma_decomposition(u, comma_cod_star(u, set({"s"})), 6).ok);
}

TEST_CASE("comma retracts") {
  // B-part: two loops collapsing onto one
  const auto& g = graphs();
  LfpMorphism id{FinFunctor::identity(g)};
  Presheaf m = graph({"a"});
  Presheaf two = graph({"a"}, {{"x", "a", "a"}, {"y", "a", "a"}});
  Presheaf one = graph({"a"}, {{"l", "a", "a"}});
  CommaGeneratorDatum d2{m, th::gmap(m, two, {{"a", "a"}}), NatTrans::identity(m)};
  CommaGeneratorDatum d1{m, th::gmap(m, one, {{"a", "a"}}), NatTrans::identity(m)};
  CommaObject e = evaluate_comma_datum(id, d2);
  CommaObject r = evaluate_comma_datum(id, d1);
  CommaMap s{NatTrans::identity(m), th::gmap(r.b, e.b, {{"1:a", "1:a"}}, {{"1:l", "1:x"}})};
  CommaMap q{NatTrans::identity(m), th::gmap(e.b, r.b, {{"1:a", "1:a"}}, {{"1:x", "1:l"}, {"1:y", "1:l"}})};
  CommaRetractSplitting split = comma_split_retract(id, d2, r, s, q);
  CHECK(iso(id, evaluate_comma_datum(id, split.datum), r));
  CommaRetractSplitting same = comma_split_retract(id, d2, e, identity_map(e), identity_map(e));
  CHECK(iso(id, evaluate_comma_datum(id, same.datum), e));

  // A-part: two vertices retracting onto one
  LfpMorphism u = th::vertex_inclusion();
  Presheaf ma = graph({"a", "b"});
  Presheaf empty = set({});
  CommaGeneratorDatum dm{ma, NatTrans::identity(empty), NatTrans::from_empty(empty, restrict(u, ma))};
  CommaEvaluation ev = evaluate_comma_square(u, dm);
  CommaObject ret = one_comma(u, graph({"a"}));
  NatTrans sa = th::gmap(ret.a, ma, {{"a", "a"}});
  NatTrans ra = th::gmap(ma, ret.a, {{"a", "a"}, {"b", "a"}});
  CommaMap sm{sa, compose(ev.square.inj_base, restrict(u, sa))};
  CommaMap rm{ra, compose(restrict(u, ra), ev.square.inj_base.inverse())};
  REQUIRE(is_comma_map(u, ret, ev.object, sm));
  REQUIRE(is_comma_map(u, ev.object, ret, rm));
  CommaRetractSplitting sp = comma_split_retract(u, dm, ret, sm, rm);
  CHECK(iso(u, evaluate_comma_datum(u, sp.datum), ret));
  CHECK(sp.datum.m.total_size() == 1);
}

TEST_CASE("two-cells factor uniquely through the comma") {
  LfpMorphism u = th::vertex_inclusion();
  auto t = catalog::terminal();
  Presheaf ga = graph({"a", "b"}, {{"x", "a", "b"}});
  Presheaf hb = set({"p"});
  NatTrans lam = th::smap(restrict(u, ga), hb, {{"a", "p"}, {"b", "p"}});
  TwoCell single{t, {ga}, {NatTrans::identity(ga)}, {hb}, {NatTrans::identity(hb)}, {lam}};
  TwoCellFactorization f = factor_two_cell(u, single);
  CHECK(f.ok());
  CHECK(f.objects[0].f == lam);
  CHECK(f.functors >= 1);

  // λ the identity with H = restrict ∘ G
  Presheaf ra = restrict(u, ga);
  TwoCell ident{t, {ga}, {NatTrans::identity(ga)}, {ra}, {NatTrans::identity(ra)}, {NatTrans::identity(ra)}};
  TwoCellFactorization fi = factor_two_cell(u, ident);
  CHECK(fi.ok());
  CHECK(iso(u, fi.objects[0], one_comma(u, ga)));

  // 𝒞 = E ⇉ V: two vertex inclusions into an edge, labelled in a two-point set
  const auto& c = graphs();
  Presheaf gv = graph({"v"});
  std::vector<Presheaf> gs(2), hs(2);
  gs[c.object("E")] = gv;
  gs[c.object("V")] = ga;
  Presheaf lab = set({"p", "q"});
  hs[c.object("E")] = lab;
  hs[c.object("V")] = lab;
  auto garrows = identities_of(c, gs, {{"src", th::gmap(gv, ga, {{"v", "a"}})},
                                       {"tgt", th::gmap(gv, ga, {{"v", "b"}})}});
  NatTrans sw = th::smap(lab, lab, {{"p", "q"}, {"q", "p"}});
  auto harrows = identities_of(c, hs, {{"src", NatTrans::identity(lab)}, {"tgt", sw}});
  std::vector<NatTrans> lambda(2);
  lambda[c.object("E")] = th::smap(restrict(u, gv), lab, {{"v", "p"}});
  lambda[c.object("V")] = th::smap(restrict(u, ga), lab, {{"a", "p"}, {"b", "q"}});
  TwoCell par{c, gs, garrows, hs, harrows, lambda};
  TwoCellFactorization fp = factor_two_cell(u, par);
  CHECK(fp.projections_strict);
  CHECK(fp.whiskering);
  CHECK(fp.satisfying == 1);
  CHECK(fp.functors > 1);

  // a non-natural λ is rejected
  TwoCell bad = par;
  bad.lambda[c.object("V")] = th::smap(restrict(u, ga), lab, {{"a", "q"}, {"b", "q"}});
  CHECK_THROWS_AS(factor_two_cell(u, bad), LfpError);
}
