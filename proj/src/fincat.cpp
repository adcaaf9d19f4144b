#include "lfp/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace lfp {

struct FinCategory::Impl {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::vector<ObjId> dom;
  std::vector<ObjId> cod;
  std::vector<MorId> identity;
  std::vector<char> is_identity;
  std::vector<MorId> comp; // comp[g * M + f], -1 when not composable
  std::unordered_map<std::string, ObjId> object_index;
  std::unordered_map<std::string, MorId> morphism_index;
  std::vector<std::vector<MorId>> homs; // homs[a * N + b]
  std::vector<std::vector<MorId>> out;
  std::vector<std::vector<MorId>> in;
};

namespace {

const std::shared_ptr<const FinCategory::Impl>& empty_impl() {
  static const auto impl = std::make_shared<const FinCategory::Impl>();
  return impl;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

} // namespace

FinCategory::FinCategory() : impl_(empty_impl()) {}
FinCategory::FinCategory(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

std::size_t FinCategory::num_objects() const { return impl_->objects.size(); }
std::size_t FinCategory::num_morphisms() const { return impl_->morphisms.size(); }
const std::string& FinCategory::object_name(ObjId a) const { return impl_->objects.at(a); }
const std::string& FinCategory::morphism_name(MorId f) const {
  return impl_->morphisms.at(f);
}
ObjId FinCategory::dom(MorId f) const { return impl_->dom[f]; }
ObjId FinCategory::cod(MorId f) const { return impl_->cod[f]; }
MorId FinCategory::identity(ObjId a) const { return impl_->identity[a]; }
bool FinCategory::is_identity(MorId f) const { return impl_->is_identity[f] != 0; }

std::optional<MorId> FinCategory::compose(MorId g, MorId f) const {
  MorId r = impl_->comp[static_cast<std::size_t>(g) * num_morphisms() + f];
  if (r < 0) return std::nullopt;
  return r;
}

MorId FinCategory::then(MorId f, MorId g) const {
  auto r = compose(g, f);
  if (!r)
    fail(ErrorKind::BadComposite,
         "(" + morphism_name(g) + ", " + morphism_name(f) + ") not composable");
  return *r;
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  auto it = impl_->object_index.find(std::string(name));
  if (it == impl_->object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const {
  auto it = impl_->morphism_index.find(std::string(name));
  if (it == impl_->morphism_index.end()) return std::nullopt;
  return it->second;
}

ObjId FinCategory::object(std::string_view name) const {
  auto r = find_object(name);
  if (!r) fail(ErrorKind::UnknownId, "object " + std::string(name));
  return *r;
}

MorId FinCategory::morphism(std::string_view name) const {
  auto r = find_morphism(name);
  if (!r) fail(ErrorKind::UnknownId, "morphism " + std::string(name));
  return *r;
}

const std::vector<MorId>& FinCategory::hom(ObjId a, ObjId b) const {
  return impl_->homs[static_cast<std::size_t>(a) * num_objects() + b];
}
const std::vector<MorId>& FinCategory::out(ObjId a) const { return impl_->out[a]; }
const std::vector<MorId>& FinCategory::in(ObjId b) const { return impl_->in[b]; }

RawCategory FinCategory::to_raw() const {
  RawCategory raw;
  raw.objects = impl_->objects;
  for (std::size_t f = 0; f < num_morphisms(); ++f)
    raw.morphisms.push_back({impl_->morphisms[f], impl_->objects[impl_->dom[f]],
                             impl_->objects[impl_->cod[f]]});
  for (std::size_t a = 0; a < num_objects(); ++a)
    raw.identities[impl_->objects[a]] = impl_->morphisms[impl_->identity[a]];
  // Composites with an identity factor are implied; only the rest are listed.
  for (std::size_t g = 0; g < num_morphisms(); ++g)
    for (std::size_t f = 0; f < num_morphisms(); ++f) {
      if (is_identity(g) || is_identity(f)) continue;
      if (auto r = compose(g, f))
        raw.compose.push_back({impl_->morphisms[g], impl_->morphisms[f],
                               impl_->morphisms[*r]});
    }
  return raw;
}

bool FinCategory::operator==(const FinCategory& other) const {
  if (impl_ == other.impl_) return true;
  const Impl& a = *impl_;
  const Impl& b = *other.impl_;
  return a.objects == b.objects && a.morphisms == b.morphisms && a.dom == b.dom &&
         a.cod == b.cod && a.identity == b.identity && a.comp == b.comp;
}

// ---------------------------------------------------------------------------

ObjId CategoryBuilder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  identity_.push_back(-1);
  return static_cast<ObjId>(objects_.size() - 1);
}

ObjId CategoryBuilder::add_object_with_identity(std::string name) {
  ObjId a = add_object(name);
  MorId f = add_morphism("id_" + name, a, a);
  set_identity(a, f);
  return a;
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId dom, ObjId cod) {
  morphisms_.push_back(std::move(name));
  dom_.push_back(dom);
  cod_.push_back(cod);
  return static_cast<MorId>(morphisms_.size() - 1);
}

void CategoryBuilder::set_identity(ObjId a, MorId f) { identity_[a] = f; }

void CategoryBuilder::set_composite(MorId g, MorId f, MorId result) {
  composites_.emplace_back(g, f, result);
}

void CategoryBuilder::fill_composites(const std::function<MorId(MorId, MorId)>& comp) {
  for (std::size_t g = 0; g < morphisms_.size(); ++g)
    for (std::size_t f = 0; f < morphisms_.size(); ++f)
      if (cod_[f] == dom_[g])
        set_composite(static_cast<MorId>(g), static_cast<MorId>(f),
                      comp(static_cast<MorId>(g), static_cast<MorId>(f)));
}

FinCategory CategoryBuilder::build(bool check_laws, std::size_t max_morphisms) const {
  const std::size_t n = objects_.size();
  const std::size_t m = morphisms_.size();
  if (max_morphisms > 0 && m > max_morphisms)
    fail(ErrorKind::SizeBoundExceeded, std::to_string(m) + " morphisms exceed the bound " +
                                           std::to_string(max_morphisms));

  auto impl = std::make_shared<FinCategory::Impl>();
  impl->objects = objects_;
  impl->morphisms = morphisms_;
  impl->dom = dom_;
  impl->cod = cod_;
  impl->identity = identity_;
  impl->is_identity.assign(m, 0);
  impl->comp.assign(m * m, -1);

  for (std::size_t a = 0; a < n; ++a) {
    if (!impl->object_index.emplace(objects_[a], static_cast<ObjId>(a)).second)
      fail(ErrorKind::ValidationError, "duplicate object id " + objects_[a]);
  }
  for (std::size_t f = 0; f < m; ++f) {
    if (!impl->morphism_index.emplace(morphisms_[f], static_cast<MorId>(f)).second)
      fail(ErrorKind::ValidationError, "duplicate morphism id " + morphisms_[f]);
  }
  for (std::size_t a = 0; a < n; ++a) {
    MorId id = identity_[a];
    if (id < 0) fail(ErrorKind::MissingIdentity, objects_[a]);
    if (dom_[id] != static_cast<ObjId>(a) || cod_[id] != static_cast<ObjId>(a))
      fail(ErrorKind::MissingIdentity,
           objects_[a] + ": " + morphisms_[id] + " is not an endomorphism of it");
    impl->is_identity[id] = 1;
  }

  auto pair_name = [&](MorId g, MorId f) {
    return "(" + morphisms_[g] + ", " + morphisms_[f] + ")";
  };
  for (auto [g, f, r] : composites_) {
    if (cod_[f] != dom_[g])
      fail(ErrorKind::BadComposite, pair_name(g, f) + " is not composable");
    if (dom_[r] != dom_[f] || cod_[r] != cod_[g])
      fail(ErrorKind::BadComposite,
           pair_name(g, f) + " -> " + morphisms_[r] + " has the wrong boundary");
    MorId& slot = impl->comp[static_cast<std::size_t>(g) * m + f];
    if (slot >= 0 && slot != r)
      fail(ErrorKind::BadComposite, pair_name(g, f) + " has two different composites");
    slot = r;
  }
  // Composites with an identity factor are implied by the unit laws.
  for (std::size_t f = 0; f < m; ++f) {
    MorId idc = identity_[cod_[f]];
    MorId idd = identity_[dom_[f]];
    MorId& left = impl->comp[static_cast<std::size_t>(idc) * m + f];
    if (left >= 0 && left != static_cast<MorId>(f))
      fail(ErrorKind::BadComposite, pair_name(idc, static_cast<MorId>(f)) +
                                        " violates the unit law");
    left = static_cast<MorId>(f);
    MorId& right = impl->comp[f * m + idd];
    if (right >= 0 && right != static_cast<MorId>(f))
      fail(ErrorKind::BadComposite, pair_name(static_cast<MorId>(f), idd) +
                                        " violates the unit law");
    right = static_cast<MorId>(f);
  }
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (cod_[f] == dom_[g] && impl->comp[g * m + f] < 0)
        fail(ErrorKind::BadComposite,
             pair_name(static_cast<MorId>(g), static_cast<MorId>(f)) + " has no composite");

  if (check_laws) {
    for (std::size_t h = 0; h < m; ++h)
      for (std::size_t g = 0; g < m; ++g) {
        if (cod_[g] != dom_[h]) continue;
        MorId hg = impl->comp[h * m + g];
        for (std::size_t f = 0; f < m; ++f) {
          if (cod_[f] != dom_[g]) continue;
          MorId gf = impl->comp[g * m + f];
          if (impl->comp[static_cast<std::size_t>(hg) * m + f] !=
              impl->comp[h * m + gf])
            fail(ErrorKind::NonAssociative,
                 "(" + morphisms_[h] + ", " + morphisms_[g] + ", " + morphisms_[f] + ")");
        }
      }
  }

  impl->homs.assign(n * n, {});
  impl->out.assign(n, {});
  impl->in.assign(n, {});
  for (std::size_t f = 0; f < m; ++f) {
    impl->homs[static_cast<std::size_t>(dom_[f]) * n + cod_[f]].push_back(
        static_cast<MorId>(f));
    impl->out[dom_[f]].push_back(static_cast<MorId>(f));
    impl->in[cod_[f]].push_back(static_cast<MorId>(f));
  }
  return FinCategory(std::shared_ptr<const FinCategory::Impl>(std::move(impl)));
}

FinCategory validate_category(const RawCategory& raw, const Config& cfg) {
  CategoryBuilder b;
  std::unordered_map<std::string, ObjId> objs;
  for (const auto& o : raw.objects) {
    if (objs.count(o)) fail(ErrorKind::ValidationError, "duplicate object id " + o);
    objs[o] = b.add_object(o);
  }
  auto obj = [&](const std::string& name, const std::string& ctx) {
    auto it = objs.find(name);
    if (it == objs.end()) fail(ErrorKind::UnknownId, "object " + name + " in " + ctx);
    return it->second;
  };
  std::unordered_map<std::string, MorId> mors;
  for (const auto& mr : raw.morphisms) {
    if (mors.count(mr.id)) fail(ErrorKind::ValidationError, "duplicate morphism id " + mr.id);
    mors[mr.id] = b.add_morphism(mr.id, obj(mr.dom, mr.id), obj(mr.cod, mr.id));
  }
  auto mor = [&](const std::string& name, const std::string& ctx) {
    auto it = mors.find(name);
    if (it == mors.end()) fail(ErrorKind::UnknownId, "morphism " + name + " in " + ctx);
    return it->second;
  };
  for (const auto& [o, f] : raw.identities)
    b.set_identity(obj(o, "identities"), mor(f, "identities"));
  for (const auto& o : raw.objects)
    if (!raw.identities.count(o)) fail(ErrorKind::MissingIdentity, o);
  for (const auto& c : raw.compose)
    b.set_composite(mor(c.g, "compose"), mor(c.f, "compose"), mor(c.result, "compose"));
  return b.build(true, cfg.max_morphisms);
}

// ---------------------------------------------------------------------------

FinFunctor::FinFunctor(FinCategory source, FinCategory target, std::vector<ObjId> on_objects,
                       std::vector<MorId> on_morphisms)
    : source_(std::move(source)), target_(std::move(target)),
      objects_(std::move(on_objects)), morphisms_(std::move(on_morphisms)) {
  if (objects_.size() != source_.num_objects() ||
      morphisms_.size() != source_.num_morphisms())
    fail(ErrorKind::BadFunctor, "object or morphism map is not total");
  for (ObjId a : objects_)
    if (a < 0 || static_cast<std::size_t>(a) >= target_.num_objects())
      fail(ErrorKind::BadFunctor, "object image out of range");
  for (std::size_t f = 0; f < morphisms_.size(); ++f) {
    MorId g = morphisms_[f];
    const auto& name = source_.morphism_name(static_cast<MorId>(f));
    if (g < 0 || static_cast<std::size_t>(g) >= target_.num_morphisms())
      fail(ErrorKind::BadFunctor, name + " has no image");
    if (target_.dom(g) != objects_[source_.dom(static_cast<MorId>(f))] ||
        target_.cod(g) != objects_[source_.cod(static_cast<MorId>(f))])
      fail(ErrorKind::BadFunctor, name + " is sent to a morphism with the wrong boundary");
  }
  for (std::size_t a = 0; a < objects_.size(); ++a)
    if (morphisms_[source_.identity(static_cast<ObjId>(a))] != target_.identity(objects_[a]))
      fail(ErrorKind::BadFunctor, "identity of " + source_.object_name(static_cast<ObjId>(a)));
  const auto m = source_.num_morphisms();
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      auto gf = source_.compose(static_cast<MorId>(g), static_cast<MorId>(f));
      if (!gf) continue;
      auto img = target_.compose(morphisms_[g], morphisms_[f]);
      if (!img || *img != morphisms_[*gf])
        fail(ErrorKind::BadFunctor, "composite (" + source_.morphism_name(static_cast<MorId>(g)) +
                                        ", " + source_.morphism_name(static_cast<MorId>(f)) +
                                        ") is not preserved");
    }
}

FinFunctor FinFunctor::identity(const FinCategory& c) {
  std::vector<ObjId> o(c.num_objects());
  std::iota(o.begin(), o.end(), 0);
  std::vector<MorId> m(c.num_morphisms());
  std::iota(m.begin(), m.end(), 0);
  return FinFunctor(c, c, std::move(o), std::move(m));
}

FinFunctor FinFunctor::constant(const FinCategory& source, const FinCategory& target, ObjId j) {
  return FinFunctor(source, target, std::vector<ObjId>(source.num_objects(), j),
                    std::vector<MorId>(source.num_morphisms(), target.identity(j)));
}

RawFunctor FinFunctor::to_raw() const {
  RawFunctor raw;
  for (std::size_t a = 0; a < objects_.size(); ++a)
    raw.on_objects[source_.object_name(static_cast<ObjId>(a))] =
        target_.object_name(objects_[a]);
  for (std::size_t f = 0; f < morphisms_.size(); ++f)
    raw.on_morphisms[source_.morphism_name(static_cast<MorId>(f))] =
        target_.morphism_name(morphisms_[f]);
  return raw;
}

FinFunctor validate_functor(const FinCategory& source, const FinCategory& target,
                            const RawFunctor& raw) {
  std::vector<ObjId> objs(source.num_objects(), -1);
  std::vector<MorId> mors(source.num_morphisms(), -1);
  for (const auto& [a, b] : raw.on_objects) objs[source.object(a)] = target.object(b);
  for (const auto& [f, g] : raw.on_morphisms) mors[source.morphism(f)] = target.morphism(g);
  // Identities may be left implicit.
  for (std::size_t a = 0; a < objs.size(); ++a) {
    if (objs[a] < 0) fail(ErrorKind::BadFunctor, "object " +
                                                   source.object_name(static_cast<ObjId>(a)) +
                                                   " has no image");
    MorId id = source.identity(static_cast<ObjId>(a));
    if (mors[id] < 0) mors[id] = target.identity(objs[a]);
  }
  for (std::size_t f = 0; f < mors.size(); ++f)
    if (mors[f] < 0)
      fail(ErrorKind::BadFunctor,
           "morphism " + source.morphism_name(static_cast<MorId>(f)) + " has no image");
  return FinFunctor(source, target, std::move(objs), std::move(mors));
}

// ---------------------------------------------------------------------------

bool is_connected(const FinCategory& c) {
  const auto n = c.num_objects();
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    int a = find_root(parent, c.dom(static_cast<MorId>(f)));
    int b = find_root(parent, c.cod(static_cast<MorId>(f)));
    if (a != b) parent[a] = b;
  }
  int root = find_root(parent, 0);
  for (std::size_t a = 1; a < n; ++a)
    if (find_root(parent, static_cast<int>(a)) != root) return false;
  return true;
}

bool is_filtered(const FinCategory& c) {
  const auto n = c.num_objects();
  if (n == 0) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      bool cospan = false;
      for (std::size_t t = 0; t < n && !cospan; ++t)
        cospan = !c.hom(static_cast<ObjId>(a), static_cast<ObjId>(t)).empty() &&
                 !c.hom(static_cast<ObjId>(b), static_cast<ObjId>(t)).empty();
      if (!cospan) return false;
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& hs = c.hom(static_cast<ObjId>(a), static_cast<ObjId>(b));
      for (std::size_t x = 0; x < hs.size(); ++x)
        for (std::size_t y = x + 1; y < hs.size(); ++y) {
          bool eq = false;
          for (MorId h : c.out(static_cast<ObjId>(b))) {
            if (*c.compose(h, hs[x]) == *c.compose(h, hs[y])) {
              eq = true;
              break;
            }
          }
          if (!eq) return false;
        }
    }
  return true;
}

bool is_essentially_surjective(const FinFunctor& f) {
  const auto& t = f.target();
  for (std::size_t j = 0; j < t.num_objects(); ++j) {
    bool hit = false;
    for (std::size_t i = 0; i < f.source().num_objects() && !hit; ++i) {
      ObjId fi = f(static_cast<ObjId>(i));
      // look for an isomorphism j ≅ F(i)
      for (MorId u : t.hom(static_cast<ObjId>(j), fi)) {
        for (MorId v : t.hom(fi, static_cast<ObjId>(j))) {
          if (*t.compose(v, u) == t.identity(static_cast<ObjId>(j)) &&
              *t.compose(u, v) == t.identity(fi)) {
            hit = true;
            break;
          }
        }
        if (hit) break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

bool is_full(const FinFunctor& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  for (std::size_t a = 0; a < s.num_objects(); ++a)
    for (std::size_t b = 0; b < s.num_objects(); ++b) {
      std::vector<char> hit(t.num_morphisms(), 0);
      for (MorId g : s.hom(static_cast<ObjId>(a), static_cast<ObjId>(b))) hit[f.map(g)] = 1;
      for (MorId h : t.hom(f(static_cast<ObjId>(a)), f(static_cast<ObjId>(b))))
        if (!hit[h]) return false;
    }
  return true;
}

namespace {

// Shared construction of j↓F (under = true) and F↓j (under = false).
CommaData build_comma_impl(const FinFunctor& F, ObjId j, bool under) {
  const auto& s = F.source();
  const auto& t = F.target();
  struct Node {
    ObjId i;
    MorId phi;
  };
  struct Arrow {
    MorId alpha;
    int from;
    int to;
  };
  std::vector<Node> nodes;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < s.num_objects(); ++i) {
    auto ii = static_cast<ObjId>(i);
    for (MorId phi : under ? t.hom(j, F(ii)) : t.hom(F(ii), j)) {
      nodes.push_back({ii, phi});
      names.push_back("(" + s.object_name(ii) + "," + t.morphism_name(phi) + ")");
    }
  }
  std::map<std::pair<ObjId, MorId>, int> node_of;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    node_of[{nodes[k].i, nodes[k].phi}] = static_cast<int>(k);

  std::vector<Arrow> arrows;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (MorId alpha : s.out(nodes[k].i)) {
      ObjId i2 = s.cod(alpha);
      if (under) {
        MorId phi2 = *t.compose(F.map(alpha), nodes[k].phi);
        arrows.push_back({alpha, static_cast<int>(k), node_of.at({i2, phi2})});
      } else {
        // every φ' with φ'∘F(α) = φ gives an arrow
        for (MorId phi2 : t.hom(F(i2), j))
          if (*t.compose(phi2, F.map(alpha)) == nodes[k].phi)
            arrows.push_back({alpha, static_cast<int>(k), node_of.at({i2, phi2})});
      }
    }
  }

  CategoryBuilder b;
  for (const auto& n : names) b.add_object(n);
  std::map<std::tuple<MorId, int, int>, MorId> lookup;
  for (const auto& a : arrows) {
    std::string name = s.morphism_name(a.alpha) + "@" + names[a.from];
    if (!under) name += ">" + names[a.to];
    MorId id = b.add_morphism(name, a.from, a.to);
    lookup[{a.alpha, a.from, a.to}] = id;
    if (a.from == a.to && a.alpha == s.identity(nodes[a.from].i)) b.set_identity(a.from, id);
  }
  b.fill_composites([&](MorId g, MorId f) {
    MorId alpha = *s.compose(arrows[g].alpha, arrows[f].alpha);
    return lookup.at({alpha, arrows[f].from, arrows[g].to});
  });
  CommaData out{b.build(false), {}, {}, {}};
  for (const auto& n : nodes) {
    out.source_object.push_back(n.i);
    out.phi.push_back(n.phi);
  }
  for (const auto& a : arrows) out.source_morphism.push_back(a.alpha);
  return out;
}

} // namespace

FinCategory build_comma(const FinFunctor& f, ObjId j) { return build_comma_impl(f, j, true).cat; }
FinCategory build_comma_over(const FinFunctor& f, ObjId j) {
  return build_comma_impl(f, j, false).cat;
}
CommaData comma_data(const FinFunctor& f, ObjId j, bool under) {
  return build_comma_impl(f, j, under);
}

bool is_final(const FinFunctor& f) {
  for (std::size_t j = 0; j < f.target().num_objects(); ++j)
    if (!is_connected(build_comma(f, static_cast<ObjId>(j)))) return false;
  return true;
}

std::vector<FinFunctor> enumerate_functors(const FinCategory& source,
                                           const FinCategory& target) {
  std::vector<FinFunctor> result;
  const auto n = source.num_objects();
  const auto m = source.num_morphisms();
  std::vector<ObjId> objs(n, 0);
  std::vector<MorId> mors(m, -1);
  if (n > 0 && target.num_objects() == 0) return result;

  std::function<void(std::size_t)> assign_mor = [&](std::size_t f) {
    if (f == m) {
      for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < m; ++h) {
          auto gh = source.compose(static_cast<MorId>(g), static_cast<MorId>(h));
          if (gh && *target.compose(mors[g], mors[h]) != mors[*gh]) return;
        }
      result.emplace_back(source, target, objs, mors);
      return;
    }
    if (source.is_identity(static_cast<MorId>(f))) {
      mors[f] = target.identity(objs[source.dom(static_cast<MorId>(f))]);
      assign_mor(f + 1);
      return;
    }
    for (MorId g : target.hom(objs[source.dom(static_cast<MorId>(f))],
                              objs[source.cod(static_cast<MorId>(f))])) {
      mors[f] = g;
      assign_mor(f + 1);
    }
  };
  std::function<void(std::size_t)> assign_obj = [&](std::size_t a) {
    if (a == n) {
      assign_mor(0);
      return;
    }
    for (std::size_t b = 0; b < target.num_objects(); ++b) {
      objs[a] = static_cast<ObjId>(b);
      assign_obj(a + 1);
    }
  };
  assign_obj(0);
  return result;
}

// ---------------------------------------------------------------------------

namespace catalog {

FinCategory terminal() {
  static const FinCategory c = [] {
    CategoryBuilder b;
    b.add_object_with_identity("*");
    b.fill_composites([](MorId, MorId) { return 0; });
    return b.build();
  }();
  return c;
}

FinCategory discrete(std::size_t n) {
  CategoryBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_object_with_identity("d" + std::to_string(i));
  b.fill_composites([](MorId g, MorId) { return g; });
  return b.build();
}

FinCategory parallel_pair() {
  static const FinCategory c = [] {
    CategoryBuilder b;
    ObjId e = b.add_object_with_identity("E");
    ObjId v = b.add_object_with_identity("V");
    b.add_morphism("src", e, v);
    b.add_morphism("tgt", e, v);
    // 0 = id_E, 1 = id_V
    b.fill_composites([](MorId g, MorId f) {
      if (g == 1) return f;
      return g; // g = id_E, f = id_E; or g ∈ {src,tgt}, f = id_E
    });
    return b.build();
  }();
  return c;
}

FinCategory linear(std::size_t n) {
  CategoryBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_object(std::to_string(i));
  std::vector<std::vector<MorId>> le(n, std::vector<MorId>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::string name = i == j ? "id_" + std::to_string(i)
                                : std::to_string(i) + "<" + std::to_string(j);
      le[i][j] = b.add_morphism(name, static_cast<ObjId>(i), static_cast<ObjId>(j));
      if (i == j) b.set_identity(static_cast<ObjId>(i), le[i][j]);
    }
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) ends.emplace_back(i, j);
  b.fill_composites([&](MorId g, MorId f) { return le[ends[f].first][ends[g].second]; });
  return b.build();
}

FinCategory span() {
  CategoryBuilder b;
  b.add_object_with_identity("l"); // 0: id_l
  b.add_object_with_identity("c"); // 1: id_c
  b.add_object_with_identity("r"); // 2: id_r
  b.add_morphism("p", 1, 0);
  b.add_morphism("q", 1, 2);
  b.fill_composites([&](MorId g, MorId f) { return g <= 2 ? f : g; });
  return b.build();
}

FinCategory cospan() {
  CategoryBuilder b;
  b.add_object_with_identity("l");
  b.add_object_with_identity("c");
  b.add_object_with_identity("r");
  b.add_morphism("p", 0, 1);
  b.add_morphism("q", 2, 1);
  b.fill_composites([&](MorId g, MorId f) { return g <= 2 ? f : g; });
  return b.build();
}

FinCategory cyclic(std::size_t n) {
  CategoryBuilder b;
  b.add_object("*");
  for (std::size_t k = 0; k < n; ++k)
    b.add_morphism(k == 0 ? "id_*" : "g" + std::to_string(k), 0, 0);
  b.set_identity(0, 0);
  b.fill_composites([&](MorId g, MorId f) { return static_cast<MorId>((g + f) % n); });
  return b.build();
}

FinCategory idempotent() {
  CategoryBuilder b;
  b.add_object("*");
  b.add_morphism("id_*", 0, 0);
  b.add_morphism("e", 0, 0);
  b.set_identity(0, 0);
  b.fill_composites([](MorId g, MorId f) { return (g == 1 || f == 1) ? 1 : 0; });
  return b.build();
}

std::vector<std::pair<std::string, FinCategory>> small_shapes() {
  return {{"terminal", terminal()},     {"discrete2", discrete(2)},
          {"arrow", linear(2)},         {"parallel", parallel_pair()},
          {"span", span()},             {"cospan", cospan()},
          {"chain3", linear(3)},        {"discrete3", discrete(3)},
          {"z2", cyclic(2)},            {"idempotent", idempotent()}};
}

} // namespace catalog

} // namespace lfp
