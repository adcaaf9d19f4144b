#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace lfp;
using th::graph;
using th::set;

namespace {

bool iso_under(const CosliceObject& x, const CosliceObject& y) {
  return find_coslice_iso(x, y).has_value();
}

} // namespace

TEST_CASE("coslice maps") {
  Presheaf b = set({"p"});
  Presheaf x = set({"a", "b"});
  CosliceObject f{th::smap(b, x, {{"p", "a"}})};
  CosliceObject g{th::smap(b, x, {{"p", "b"}})};
  CHECK(count_coslice_homs(f, f) == 2); // identity and the constant map at a
  CHECK(count_coslice_homs(f, g) == 2);
  CHECK(iso_under(f, g));
  CHECK_THROWS_AS(make_coslice_map(f, g, NatTrans::identity(x)), LfpError);
  CosliceMap sw = make_coslice_map(f, g, th::smap(x, x, {{"a", "b"}, {"b", "a"}}));
  CHECK(compose(sw, identity_map(f)).underlying == sw.underlying);
}

TEST_CASE("coslice colimit of a one-object shape is the object") {
  Presheaf b = graph({"a"});
  Presheaf x = graph({"a", "b"}, {{"x", "a", "b"}});
  CosliceObject f{th::gmap(b, x, {{"a", "b"}})};
  CosliceDiagram d = make_coslice_diagram(catalog::terminal(), b, {f}, {});
  CHECK(iso_under(coslice_colimit(d).object, f));
}

TEST_CASE("coequalizer shape matches the quotient recipe") {
  std::mt19937_64 rng(31);
  const auto& g = catalog::parallel_pair();
  auto par = catalog::parallel_pair();
  std::size_t checked = 0;
  for (int rep = 0; rep < 60; ++rep) {
    Presheaf b = random_presheaf(g, 2, rng);
    auto d = th::random_coslice_diagram(par, b, 3, rng);
    if (!d) continue;
    NatTrans s = d->arrows[par.morphism("src")], t = d->arrows[par.morphism("tgt")];
    Quotient q = coequalizer(s, t);
    CosliceObject recipe{compose(q.q, d->objects[par.object("V")].arrow)};
    CHECK(iso_under(coslice_colimit(*d).object, recipe));
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("binary coproduct under a point glues the images") {
  Presheaf b = set({"*"});
  Presheaf x = set({"a", "b"});
  Presheaf y = set({"c", "d"});
  CosliceObject f1{th::smap(b, x, {{"*", "a"}})};
  CosliceObject f2{th::smap(b, y, {{"*", "c"}})};
  CosliceDiagram d = make_coslice_diagram(catalog::discrete(2), b, {f1, f2}, {});
  CosliceColimit c = coslice_colimit(d);
  std::size_t glued = c.object.cod().total_size();
  std::size_t plain = finite_colimit(cod_diagram(d)).apex.total_size();
  CHECK(glued == 3);
  CHECK(plain == 4);
  CHECK(glued < plain);
  CodCorrection corr = cod_correction(d);
  CHECK(corr.object.total_size() == 3);
}

TEST_CASE("cod_correction examples") {
  // B empty: composites out of B agree trivially and the coproduct is unchanged
  Presheaf b = set({});
  Presheaf x = set({"a"}), y = set({"c", "d"});
  CosliceDiagram d = make_coslice_diagram(catalog::discrete(2), b,
                                          {{NatTrans::from_empty(b, x)}, {NatTrans::from_empty(b, y)}}, {});
  CHECK(cod_correction(d).object.total_size() == 3);

  // empty shape: the base itself
  Presheaf p = set({"p"});
  CosliceDiagram e = make_coslice_diagram(catalog::discrete(0), p, {}, {});
  CHECK(cod_correction(e).arrow.is_iso());
  CHECK(coslice_colimit(e).object.arrow.is_iso());
}

TEST_CASE("connected shapes: cod preserves the colimit") {
  std::mt19937_64 rng(41);
  const auto& g = catalog::parallel_pair();
  std::size_t checked = 0;
  for (const auto& [name, shape] : catalog::small_shapes()) {
    if (!is_connected(shape)) continue;
    for (int rep = 0; rep < 8; ++rep) {
      Presheaf b = random_presheaf(g, 2, rng);
      auto d = th::random_coslice_diagram(shape, b, 3, rng);
      if (!d) continue;
      CAPTURE(name);
      CosliceColimit c = coslice_colimit(*d);
      Cocone plain = finite_colimit(cod_diagram(*d));
      CHECK(oracle::isomorphic(c.object.cod(), plain.apex));
      // every leg composite agrees with the colimit arrow
      for (std::size_t i = 0; i < d->objects.size(); ++i)
        CHECK(compose(c.legs[i], d->objects[i].arrow) == c.object.arrow);
      ++checked;
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("the correction reproduces the coslice colimit on every shape, in any order") {
  std::mt19937_64 rng(43);
  const auto& g = catalog::parallel_pair();
  std::size_t checked = 0, strict = 0;
  for (const auto& [name, shape] : catalog::small_shapes()) {
    for (int rep = 0; rep < 8; ++rep) {
      Presheaf b = random_presheaf(g, 2, rng);
      auto d = th::random_coslice_diagram(shape, b, 3, rng);
      if (!d) continue;
      CAPTURE(name);
      CosliceColimit c = coslice_colimit(*d);
      CodCorrection corr = cod_correction(*d);
      CHECK(iso_under(c.object, {corr.arrow}));
      std::vector<std::size_t> rev(d->objects.size());
      std::iota(rev.rbegin(), rev.rend(), 0);
      CHECK(iso_under({cod_correction(*d, rev).arrow}, {corr.arrow}));
      if (corr.object.total_size() < finite_colimit(cod_diagram(*d)).apex.total_size()) ++strict;
      ++checked;
    }
  }
  CHECK(checked > 50);
  CHECK(strict > 0);
}

TEST_CASE("cod_star examples and adjunction") {
  Presheaf b = set({"p"});
  Presheaf empty = set({});
  CHECK(cod_star(b, empty).arrow.is_iso());
  Presheaf c = set({"q"});
  CosliceObject from_empty = cod_star(empty, c);
  CHECK(isomorphic(from_empty.cod(), c));

  Presheaf x = set({"a", "b"});
  CosliceObject f{th::smap(b, x, {{"p", "a"}})};
  CHECK(count_coslice_homs(cod_star(b, c), f) == count_homs(c, x));
  CHECK(check_cod_star_adjunction(b, c, f));
  CHECK(check_cod_star_adjunction(empty, c, {NatTrans::from_empty(empty, x)}));

  std::mt19937_64 rng(2);
  const auto& g = catalog::parallel_pair();
  for (int rep = 0; rep < 30; ++rep) {
    Presheaf bb = random_presheaf(g, 2, rng), cc = random_presheaf(g, 2, rng),
             y = random_presheaf(g, 3, rng);
    auto h = random_hom(bb, y, rng);
    if (!h) continue;
    CHECK(check_cod_star_adjunction(bb, cc, {*h}));
  }
}

TEST_CASE("pushforward along the identity and along graph maps") {
  Presheaf b = graph({"a"});
  Presheaf x = graph({"a", "b"}, {{"x", "a", "b"}});
  CosliceObject h{th::gmap(b, x, {{"a", "a"}})};
  Pushforward id = pushforward_functor(NatTrans::identity(b));
  CHECK(iso_under(id.push(h), h));
  CHECK(id.pull(h).arrow == h.arrow);

  // empty source: the pushforward is the coproduct inclusion
  Presheaf e(catalog::parallel_pair());
  Pushforward from_empty = pushforward_functor(NatTrans::from_empty(e, b));
  CosliceObject he{NatTrans::from_empty(e, x)};
  CHECK(iso_under(from_empty.push(he), cod_star(b, x)));

  Presheaf b2 = graph({"a", "b"}, {{"y", "a", "b"}});
  Pushforward f = pushforward_functor(th::gmap(b, b2, {{"a", "b"}}));
  Presheaf w = graph({"a", "b", "c"}, {{"y", "a", "b"}, {"z", "b", "c"}, {"l", "c", "c"}});
  for (const auto& g : enumerate_homs(b2, w)) CHECK(check_pushforward_adjunction(f, h, {g}));

  // functoriality on maps: the pushed identity is an identity
  CosliceMap idh = identity_map(h);
  NatTrans pushed = f.push(idh);
  CHECK(pushed == NatTrans::identity(f.push(h).cod()));
}

TEST_CASE("pushforward adjunction on random data") {
  std::mt19937_64 rng(17);
  const auto& g = catalog::parallel_pair();
  std::size_t checked = 0;
  for (int rep = 0; rep < 60; ++rep) {
    Presheaf b1 = random_presheaf(g, 2, rng), b2 = random_presheaf(g, 2, rng);
    auto f = random_hom(b1, b2, rng);
    Presheaf x = random_presheaf(g, 3, rng), y = random_presheaf(g, 3, rng);
    auto h = random_hom(b1, x, rng);
    auto k = random_hom(b2, y, rng);
    if (!f || !h || !k) continue;
    CHECK(check_pushforward_adjunction(pushforward_functor(*f), {*h}, {*k}));
    ++checked;
  }
  CHECK(checked > 20);
}
