#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace lfp;
using th::graph;
using th::set;

TEST_CASE("presheaf validation") {
  CHECK(set({"a", "b", "c"}).total_size() == 3);
  Presheaf e = graph({"a", "b"}, {{"x", "a", "b"}});
  CHECK(e.total_size() == 3);

  // 0 → 1 → 2 with X(1<2) ∘ X(0<1) ≠ X(0<2)
  FinCategory l3 = catalog::linear(3);
  RawPresheaf raw;
  raw.carrier = {{"0", {"p"}}, {"1", {"q1", "q2"}}, {"2", {"r1", "r2"}}};
  raw.action["0<1"] = {{"p", "q1"}};
  raw.action["1<2"] = {{"q1", "r1"}, {"q2", "r2"}};
  raw.action["0<2"] = {{"p", "r2"}};
  try {
    validate_presheaf(l3, raw);
    FAIL("bad composite action accepted");
  } catch (const LfpError& err) {
    CHECK(err.kind() == ErrorKind::BadCompositeAction);
  }
  raw.action["0<2"] = {{"p", "r1"}};
  CHECK_NOTHROW(validate_presheaf(l3, raw));

  RawPresheaf dangling;
  dangling.carrier = {{"V", {"a"}}, {"E", {"x"}}};
  dangling.action["src"] = {{"x", "zz"}};
  dangling.action["tgt"] = {{"x", "a"}};
  try {
    validate_presheaf(catalog::parallel_pair(), dangling);
    FAIL("unknown element accepted");
  } catch (const LfpError& err) {
    CHECK(err.kind() == ErrorKind::UnknownId);
  }
}

TEST_CASE("hom counts") {
  Presheaf empty(catalog::parallel_pair());
  Presheaf loop = graph({"a"}, {{"x", "a", "a"}});
  CHECK(count_homs(empty, loop) == 1);
  CHECK(count_homs(set({"a", "b"}), set({"p", "q"})) == 4);
  CHECK(count_homs(loop, loop) == oracle::homs(loop, loop).size());
  Presheaf two_loops = graph({"a", "b"}, {{"x", "a", "a"}, {"y", "b", "b"}, {"z", "a", "b"}});
  CHECK(count_homs(two_loops, two_loops) == oracle::homs(two_loops, two_loops).size());
}

TEST_CASE("enumerate_homs agrees with the brute-force oracle up to total size 6") {
  std::mt19937_64 rng(11);
  std::size_t checked = 0;
  for (const auto& [name, c] : catalog::small_shapes()) {
    for (int rep = 0; rep < 12; ++rep) {
      Presheaf x = random_presheaf(c, 3, rng);
      Presheaf y = random_presheaf(c, 3, rng);
      auto mine = enumerate_homs(x, y);
      auto ref = oracle::homs(x, y);
      CAPTURE(name);
      REQUIRE(mine.size() == ref.size());
      std::vector<oracle::Comps> got;
      for (const auto& t : mine) got.push_back(t.components());
      std::sort(got.begin(), got.end());
      std::sort(ref.begin(), ref.end());
      CHECK(got == ref);
      ++checked;
    }
  }
  CHECK(checked == 120);
}

TEST_CASE("composition is associative and unital") {
  std::mt19937_64 rng(3);
  const auto& g = catalog::parallel_pair();
  for (int rep = 0; rep < 40; ++rep) {
    Presheaf a = random_presheaf(g, 3, rng), b = random_presheaf(g, 3, rng);
    Presheaf c = random_presheaf(g, 3, rng), d = random_presheaf(g, 3, rng);
    auto f = random_hom(a, b, rng), h = random_hom(b, c, rng), k = random_hom(c, d, rng);
    if (!f || !h || !k) continue;
    CHECK(compose(*k, compose(*h, *f)) == compose(compose(*k, *h), *f));
    CHECK(compose(NatTrans::identity(b), *f) == *f);
    CHECK(compose(*f, NatTrans::identity(a)) == *f);
  }
}

TEST_CASE("category of elements and total size") {
  Presheaf empty(catalog::parallel_pair());
  CHECK(category_of_elements(empty).num_objects() == 0);
  CHECK(empty.total_size() == 0);
  FinCategory one = category_of_elements(set({"p"}));
  CHECK(one.num_objects() == 1);
  CHECK(one.num_morphisms() == 1);
  CHECK(set({"p"}).total_size() == 1);
  Presheaf e = graph({"a", "b"}, {{"x", "a", "b"}});
  FinCategory el = category_of_elements(e);
  CHECK(el.num_objects() == 3);
  CHECK(el.num_morphisms() == 3 + 2);
  CHECK(e.total_size() == 3);
}

TEST_CASE("sub-presheaves, closure and images") {
  Presheaf p = graph({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "c"}});
  const auto& g = p.index();
  Mask m = closure(p, {{g.object("E"), 0}});
  CHECK(mask_count(m) == 3); // x with both endpoints
  auto [sub, incl] = subpresheaf(p, m);
  CHECK(th::sizes(sub) == std::vector<std::size_t>{1, 2});
  CHECK(incl.is_injective());
  // every closed set is closed
  for (const auto& mask : subpresheaf_masks(p)) {
    std::vector<ElemRef> gens;
    for (std::size_t a = 0; a < mask.size(); ++a)
      for (std::size_t x = 0; x < mask[a].size(); ++x)
        if (mask[a][x]) gens.push_back({static_cast<ObjId>(a), static_cast<Elem>(x)});
    CHECK(closure(p, gens) == mask);
  }
  NatTrans collapse = th::gmap(p, graph({"a"}, {{"x", "a", "a"}}), {{"a", "a"}, {"b", "a"}, {"c", "a"}},
                               {{"x", "x"}, {"y", "x"}});
  ImageFactorization im = image_factorization(collapse);
  CHECK(im.image.total_size() == 2);
  CHECK(compose(im.inclusion, im.onto) == collapse);
}

TEST_CASE("isomorphism search matches the oracle") {
  std::mt19937_64 rng(5);
  for (const auto& [name, c] : catalog::small_shapes())
    for (int rep = 0; rep < 6; ++rep) {
      Presheaf x = random_presheaf(c, 4, rng), y = random_presheaf(c, 4, rng);
      CAPTURE(name);
      CHECK(isomorphic(x, y) == oracle::isomorphic(x, y));
      CHECK(isomorphic(x, x));
    }
}

TEST_CASE("nat-trans validation") {
  Presheaf e = graph({"a", "b"}, {{"x", "a", "b"}});
  Presheaf loop = graph({"a"}, {{"x", "a", "a"}});
  CHECK_NOTHROW(th::gmap(e, loop, {{"a", "a"}, {"b", "a"}}, {{"x", "x"}}));
  try {
    th::gmap(loop, e, {{"a", "a"}}, {{"x", "x"}});
    FAIL("non-natural map accepted");
  } catch (const LfpError& err) {
    CHECK(err.kind() == ErrorKind::BadNaturality);
  }
}
