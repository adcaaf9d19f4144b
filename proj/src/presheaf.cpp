#include "lfp/presheaf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace lfp {

struct Presheaf::Impl {
  FinCategory index;
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<Elem>> actions;
  std::vector<std::unordered_map<std::string, Elem>> lookup;
  std::size_t total = 0;
};

Presheaf::Presheaf() : Presheaf(FinCategory()) {}

Presheaf::Presheaf(FinCategory index) {
  auto impl = std::make_shared<Impl>();
  impl->names.assign(index.num_objects(), {});
  impl->lookup.assign(index.num_objects(), {});
  impl->actions.assign(index.num_morphisms(), {});
  impl->index = std::move(index);
  impl_ = std::move(impl);
}

Presheaf::Presheaf(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Presheaf Presheaf::make(FinCategory index, std::vector<std::vector<std::string>> names,
                        std::vector<std::vector<Elem>> actions, bool check) {
  const auto n = index.num_objects();
  const auto m = index.num_morphisms();
  if (names.size() != n || actions.size() != m)
    fail(ErrorKind::ValidationError, "carrier or action table does not match the index");
  auto impl = std::make_shared<Impl>();
  impl->lookup.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    impl->total += names[a].size();
    for (std::size_t x = 0; x < names[a].size(); ++x)
      if (!impl->lookup[a].emplace(names[a][x], static_cast<Elem>(x)).second)
        fail(ErrorKind::ValidationError, "duplicate element " + names[a][x] + " at " +
                                             index.object_name(static_cast<ObjId>(a)));
  }
  for (std::size_t f = 0; f < m; ++f) {
    auto ff = static_cast<MorId>(f);
    const auto ds = names[index.dom(ff)].size();
    const auto cs = names[index.cod(ff)].size();
    auto& act = actions[f];
    if (act.empty() && ds > 0) {
      if (!index.is_identity(ff))
        fail(ErrorKind::ValidationError, "no action given for " + index.morphism_name(ff));
      act.resize(ds);
      std::iota(act.begin(), act.end(), 0);
    }
    if (act.size() != ds)
      fail(ErrorKind::ValidationError, "action of " + index.morphism_name(ff) + " is not total");
    for (Elem y : act)
      if (y < 0 || static_cast<std::size_t>(y) >= cs)
        fail(ErrorKind::ValidationError,
             "action of " + index.morphism_name(ff) + " leaves the carrier");
  }
  if (check) {
    for (std::size_t a = 0; a < n; ++a) {
      const auto& act = actions[index.identity(static_cast<ObjId>(a))];
      for (std::size_t x = 0; x < act.size(); ++x)
        if (act[x] != static_cast<Elem>(x))
          fail(ErrorKind::BadIdentityAction, index.object_name(static_cast<ObjId>(a)));
    }
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t f = 0; f < m; ++f) {
        auto gf = index.compose(static_cast<MorId>(g), static_cast<MorId>(f));
        if (!gf) continue;
        for (std::size_t x = 0; x < actions[f].size(); ++x)
          if (actions[*gf][x] != actions[g][actions[f][x]])
            fail(ErrorKind::BadCompositeAction,
                 "(" + index.morphism_name(static_cast<MorId>(g)) + ", " +
                     index.morphism_name(static_cast<MorId>(f)) + ")");
      }
  }
  impl->index = std::move(index);
  impl->names = std::move(names);
  impl->actions = std::move(actions);
  return Presheaf(std::shared_ptr<const Impl>(std::move(impl)));
}

const FinCategory& Presheaf::index() const { return impl_->index; }
std::size_t Presheaf::size(ObjId a) const { return impl_->names[a].size(); }
std::size_t Presheaf::total_size() const { return impl_->total; }
const std::string& Presheaf::element_name(ObjId a, Elem x) const { return impl_->names[a].at(x); }
const std::vector<std::string>& Presheaf::element_names(ObjId a) const {
  return impl_->names[a];
}

std::optional<Elem> Presheaf::find_element(ObjId a, std::string_view name) const {
  auto it = impl_->lookup[a].find(std::string(name));
  if (it == impl_->lookup[a].end()) return std::nullopt;
  return it->second;
}

Elem Presheaf::element(ObjId a, std::string_view name) const {
  auto r = find_element(a, name);
  if (!r)
    fail(ErrorKind::UnknownId,
         "element " + std::string(name) + " at " + index().object_name(a));
  return *r;
}

Elem Presheaf::act(MorId f, Elem x) const { return impl_->actions[f][x]; }
const std::vector<Elem>& Presheaf::action(MorId f) const { return impl_->actions[f]; }

RawPresheaf Presheaf::to_raw() const {
  RawPresheaf raw;
  const auto& c = index();
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    raw.carrier[c.object_name(static_cast<ObjId>(a))] = impl_->names[a];
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    if (c.is_identity(ff)) continue;
    auto& entry = raw.action[c.morphism_name(ff)];
    for (std::size_t x = 0; x < impl_->actions[f].size(); ++x)
      entry[element_name(c.dom(ff), static_cast<Elem>(x))] =
          element_name(c.cod(ff), impl_->actions[f][x]);
  }
  return raw;
}

bool Presheaf::operator==(const Presheaf& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->index == other.impl_->index && impl_->names == other.impl_->names &&
         impl_->actions == other.impl_->actions;
}

Presheaf validate_presheaf(const FinCategory& index, const RawPresheaf& raw) {
  const auto n = index.num_objects();
  std::vector<std::vector<std::string>> names(n);
  std::unordered_set<std::string> seen;
  for (const auto& [obj, elems] : raw.carrier) {
    ObjId a = index.object(obj);
    for (const auto& e : elems)
      if (!seen.insert(e).second)
        fail(ErrorKind::ValidationError, "element id " + e + " is used twice");
    names[a] = elems;
  }
  std::vector<std::vector<Elem>> actions(index.num_morphisms());
  for (const auto& [mor, table] : raw.action) {
    MorId f = index.morphism(mor);
    ObjId d = index.dom(f);
    ObjId c = index.cod(f);
    auto& act = actions[f];
    act.assign(names[d].size(), -1);
    for (const auto& [x, y] : table) {
      auto xi = std::find(names[d].begin(), names[d].end(), x);
      auto yi = std::find(names[c].begin(), names[c].end(), y);
      if (xi == names[d].end())
        fail(ErrorKind::UnknownId, "element " + x + " in the action of " + mor);
      if (yi == names[c].end())
        fail(ErrorKind::UnknownId, "element " + y + " in the action of " + mor);
      act[xi - names[d].begin()] = static_cast<Elem>(yi - names[c].begin());
    }
    for (std::size_t x = 0; x < act.size(); ++x)
      if (act[x] < 0)
        fail(ErrorKind::ValidationError, "action of " + mor + " misses " + names[d][x]);
  }
  return Presheaf::make(index, std::move(names), std::move(actions), true);
}

// ---------------------------------------------------------------------------

NatTrans::NatTrans(Presheaf source, Presheaf target, std::vector<std::vector<Elem>> components,
                   bool check)
    : source_(std::move(source)), target_(std::move(target)),
      components_(std::move(components)) {
  const auto& c = source_.index();
  if (!(c == target_.index()))
    fail(ErrorKind::IndexMismatch, "source and target live over different index categories");
  if (components_.size() != c.num_objects())
    fail(ErrorKind::BadNaturality, "component count does not match the index");
  for (std::size_t a = 0; a < components_.size(); ++a) {
    if (components_[a].size() != source_.size(static_cast<ObjId>(a)))
      fail(ErrorKind::BadNaturality,
           "component at " + c.object_name(static_cast<ObjId>(a)) + " is not total");
    for (Elem y : components_[a])
      if (y < 0 || static_cast<std::size_t>(y) >= target_.size(static_cast<ObjId>(a)))
        fail(ErrorKind::BadNaturality,
             "component at " + c.object_name(static_cast<ObjId>(a)) + " leaves the target");
  }
  if (!check) return;
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    ObjId d = c.dom(ff);
    ObjId e = c.cod(ff);
    for (std::size_t x = 0; x < components_[d].size(); ++x)
      if (components_[e][source_.act(ff, static_cast<Elem>(x))] !=
          target_.act(ff, components_[d][x]))
        fail(ErrorKind::BadNaturality,
             "square at " + c.morphism_name(ff) + " fails on " +
                 source_.element_name(d, static_cast<Elem>(x)));
  }
}

NatTrans NatTrans::identity(const Presheaf& x) {
  std::vector<std::vector<Elem>> comps(x.index().num_objects());
  for (std::size_t a = 0; a < comps.size(); ++a) {
    comps[a].resize(x.size(static_cast<ObjId>(a)));
    std::iota(comps[a].begin(), comps[a].end(), 0);
  }
  return NatTrans(x, x, std::move(comps), false);
}

NatTrans NatTrans::from_empty(const Presheaf& empty, const Presheaf& y) {
  if (empty.total_size() != 0) fail(ErrorKind::Internal, "source is not empty");
  return NatTrans(empty, y, std::vector<std::vector<Elem>>(empty.index().num_objects()), false);
}

bool NatTrans::is_injective() const {
  for (std::size_t a = 0; a < components_.size(); ++a) {
    std::vector<char> hit(target_.size(static_cast<ObjId>(a)), 0);
    for (Elem y : components_[a]) {
      if (hit[y]) return false;
      hit[y] = 1;
    }
  }
  return true;
}

bool NatTrans::is_surjective() const {
  for (std::size_t a = 0; a < components_.size(); ++a) {
    std::vector<char> hit(target_.size(static_cast<ObjId>(a)), 0);
    for (Elem y : components_[a]) hit[y] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
  }
  return true;
}

NatTrans NatTrans::inverse() const {
  if (!is_iso()) fail(ErrorKind::Internal, "inverse of a non-isomorphism");
  std::vector<std::vector<Elem>> inv(components_.size());
  for (std::size_t a = 0; a < components_.size(); ++a) {
    inv[a].resize(components_[a].size());
    for (std::size_t x = 0; x < components_[a].size(); ++x)
      inv[a][components_[a][x]] = static_cast<Elem>(x);
  }
  return NatTrans(target_, source_, std::move(inv), false);
}

NatTrans compose(const NatTrans& g, const NatTrans& f) {
  if (!(f.target() == g.source()))
    fail(ErrorKind::IndexMismatch, "composing maps whose endpoints do not match");
  std::vector<std::vector<Elem>> comps(f.components().size());
  for (std::size_t a = 0; a < comps.size(); ++a) {
    for (Elem y : f.component(static_cast<ObjId>(a)))
      comps[a].push_back(g(static_cast<ObjId>(a), y));
  }
  return NatTrans(f.source(), g.target(), std::move(comps), false);
}

NatTrans validate_nat_trans(
    const Presheaf& source, const Presheaf& target,
    const std::map<std::string, std::map<std::string, std::string>>& raw) {
  const auto& c = source.index();
  if (!(c == target.index()))
    fail(ErrorKind::IndexMismatch, "source and target live over different index categories");
  std::vector<std::vector<Elem>> comps(c.num_objects());
  for (std::size_t a = 0; a < comps.size(); ++a)
    comps[a].assign(source.size(static_cast<ObjId>(a)), -1);
  for (const auto& [obj, table] : raw) {
    ObjId a = c.object(obj);
    for (const auto& [x, y] : table) comps[a][source.element(a, x)] = target.element(a, y);
  }
  for (std::size_t a = 0; a < comps.size(); ++a)
    for (std::size_t x = 0; x < comps[a].size(); ++x)
      if (comps[a][x] < 0)
        fail(ErrorKind::BadNaturality,
             "no value for " + source.element_name(static_cast<ObjId>(a), static_cast<Elem>(x)));
  return NatTrans(source, target, std::move(comps), true);
}

std::map<std::string, std::map<std::string, std::string>> to_raw(const NatTrans& t) {
  std::map<std::string, std::map<std::string, std::string>> raw;
  const auto& c = t.source().index();
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    auto aa = static_cast<ObjId>(a);
    auto& entry = raw[c.object_name(aa)];
    for (std::size_t x = 0; x < t.component(aa).size(); ++x)
      entry[t.source().element_name(aa, static_cast<Elem>(x))] =
          t.target().element_name(aa, t(aa, static_cast<Elem>(x)));
  }
  return raw;
}

// ---------------------------------------------------------------------------

namespace {

class HomSearcher {
public:
  HomSearcher(const Presheaf& x, const Presheaf& y, const Config& cfg, const HomSearch& search)
      : x_(x), y_(y), c_(x.index()), cfg_(cfg), search_(search) {
    comp_.resize(c_.num_objects());
    used_.resize(c_.num_objects());
    for (std::size_t a = 0; a < c_.num_objects(); ++a) {
      comp_[a].assign(x.size(static_cast<ObjId>(a)), -1);
      used_[a].assign(y.size(static_cast<ObjId>(a)), 0);
    }
    positions_ = all_elements(x);
  }

  void run(const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit) {
    visit_ = &visit;
    recurse(0);
  }

private:
  bool assign(ObjId a, Elem x, Elem y) {
    pending_.clear();
    pending_.push_back({a, x, y});
    while (!pending_.empty()) {
      auto [b, u, v] = pending_.back();
      pending_.pop_back();
      Elem& slot = comp_[b][u];
      if (slot == v) continue;
      if (slot >= 0) return false;
      if (search_.allowed && !search_.allowed(b, u, v)) return false;
      if (search_.injective) {
        if (used_[b][v]) return false;
        used_[b][v] = 1;
      }
      slot = v;
      trail_.push_back({b, u});
      for (MorId f : c_.out(b)) {
        if (c_.is_identity(f)) continue;
        pending_.push_back({c_.cod(f), x_.act(f, u), y_.act(f, v)});
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [b, u] = trail_.back();
      trail_.pop_back();
      if (search_.injective) used_[b][comp_[b][u]] = 0;
      comp_[b][u] = -1;
    }
  }

  void recurse(std::size_t pos) {
    if (stop_) return;
    if ((++nodes_ & 1023u) == 0) check_cancel(cfg_);
    if (pos == positions_.size()) {
      if (!(*visit_)(comp_)) stop_ = true;
      return;
    }
    auto [a, x] = positions_[pos];
    if (comp_[a][x] >= 0) {
      recurse(pos + 1);
      return;
    }
    const auto ny = static_cast<Elem>(y_.size(a));
    for (Elem v = 0; v < ny && !stop_; ++v) {
      std::size_t mark = trail_.size();
      if (assign(a, x, v)) recurse(pos + 1);
      undo(mark);
    }
  }

  struct Pending {
    ObjId obj;
    Elem x;
    Elem y;
  };

  const Presheaf& x_;
  const Presheaf& y_;
  const FinCategory& c_;
  const Config& cfg_;
  const HomSearch& search_;
  std::vector<std::vector<Elem>> comp_;
  std::vector<std::vector<char>> used_;
  std::vector<ElemRef> positions_;
  std::vector<Pending> pending_;
  std::vector<ElemRef> trail_;
  const std::function<bool(const std::vector<std::vector<Elem>>&)>* visit_ = nullptr;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
};

} // namespace

void for_each_hom(const Presheaf& x, const Presheaf& y,
                  const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit,
                  const Config& cfg, const HomSearch& search) {
  if (!(x.index() == y.index()))
    fail(ErrorKind::IndexMismatch, "hom between presheaves over different index categories");
  double log_space = 0;
  for (std::size_t a = 0; a < x.index().num_objects(); ++a) {
    auto sx = x.size(static_cast<ObjId>(a));
    auto sy = y.size(static_cast<ObjId>(a));
    if (sx == 0) continue;
    if (sy == 0) return;
    if (search.injective && sy < sx) return;
    log_space += static_cast<double>(sx) * std::log(static_cast<double>(sy));
  }
  if (log_space > std::log(cfg.enumeration_budget) + 1e-9)
    fail(ErrorKind::SizeBoundExceeded,
         "raw function space of size e^" + std::to_string(log_space) +
             " exceeds the enumeration budget");
  HomSearcher(x, y, cfg, search).run(visit);
}

std::vector<NatTrans> enumerate_homs(const Presheaf& x, const Presheaf& y, const Config& cfg,
                                     const HomSearch& search) {
  std::vector<NatTrans> out;
  for_each_hom(
      x, y,
      [&](const std::vector<std::vector<Elem>>& c) {
        out.emplace_back(x, y, c, false);
        return true;
      },
      cfg, search);
  return out;
}

std::size_t count_homs(const Presheaf& x, const Presheaf& y, const Config& cfg,
                       const HomSearch& search) {
  std::size_t n = 0;
  for_each_hom(
      x, y,
      [&](const std::vector<std::vector<Elem>>&) {
        ++n;
        return true;
      },
      cfg, search);
  return n;
}

std::optional<NatTrans> first_hom(const Presheaf& x, const Presheaf& y, const Config& cfg,
                                  const HomSearch& search) {
  std::optional<NatTrans> out;
  for_each_hom(
      x, y,
      [&](const std::vector<std::vector<Elem>>& c) {
        out.emplace(x, y, c, false);
        return false;
      },
      cfg, search);
  return out;
}

std::optional<NatTrans> find_iso(const Presheaf& x, const Presheaf& y, const Config& cfg) {
  if (!(x.index() == y.index())) return std::nullopt;
  for (std::size_t a = 0; a < x.index().num_objects(); ++a)
    if (x.size(static_cast<ObjId>(a)) != y.size(static_cast<ObjId>(a))) return std::nullopt;
  HomSearch s;
  s.injective = true;
  return first_hom(x, y, cfg, s);
}

bool isomorphic(const Presheaf& x, const Presheaf& y, const Config& cfg) {
  return find_iso(x, y, cfg).has_value();
}

// ---------------------------------------------------------------------------

Presheaf representable(const FinCategory& c, ObjId a) {
  std::vector<std::vector<std::string>> names(c.num_objects());
  std::vector<std::vector<MorId>> elems(c.num_objects());
  for (std::size_t b = 0; b < c.num_objects(); ++b) {
    elems[b] = c.hom(a, static_cast<ObjId>(b));
    for (MorId f : elems[b]) names[b].push_back(c.morphism_name(f));
  }
  std::vector<std::vector<Elem>> actions(c.num_morphisms());
  for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
    auto gg = static_cast<MorId>(g);
    const auto& src = elems[c.dom(gg)];
    const auto& dst = elems[c.cod(gg)];
    for (MorId f : src) {
      MorId gf = *c.compose(gg, f);
      actions[g].push_back(static_cast<Elem>(std::find(dst.begin(), dst.end(), gf) - dst.begin()));
    }
  }
  return Presheaf::make(c, std::move(names), std::move(actions), false);
}

Presheaf terminal_presheaf(const FinCategory& c) {
  std::vector<std::vector<std::string>> names(c.num_objects(), {"*"});
  std::vector<std::vector<Elem>> actions(c.num_morphisms(), {0});
  return Presheaf::make(c, std::move(names), std::move(actions), false);
}

std::vector<ElemRef> all_elements(const Presheaf& x) {
  std::vector<ElemRef> out;
  for (std::size_t a = 0; a < x.index().num_objects(); ++a)
    for (std::size_t e = 0; e < x.size(static_cast<ObjId>(a)); ++e)
      out.push_back({static_cast<ObjId>(a), static_cast<Elem>(e)});
  return out;
}

FinCategory category_of_elements(const Presheaf& x) {
  const auto& c = x.index();
  CategoryBuilder b;
  std::vector<std::vector<ObjId>> node(c.num_objects());
  for (auto [a, e] : all_elements(x)) {
    node[a].push_back(b.add_object(c.object_name(a) + ":" + x.element_name(a, e)));
  }
  // morphism (f, e) for every f out of a and every e in X(a)
  std::vector<std::vector<MorId>> mor(c.num_morphisms());
  struct Info {
    MorId f;
    Elem e;
  };
  std::vector<Info> info;
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    ObjId a = c.dom(ff);
    for (std::size_t e = 0; e < x.size(a); ++e) {
      auto ee = static_cast<Elem>(e);
      MorId id = b.add_morphism(c.morphism_name(ff) + "@" + x.element_name(a, ee), node[a][e],
                                node[c.cod(ff)][x.act(ff, ee)]);
      mor[f].push_back(id);
      info.push_back({ff, ee});
      if (c.is_identity(ff)) b.set_identity(node[a][e], id);
    }
  }
  b.fill_composites([&](MorId g, MorId f) {
    MorId gf = *c.compose(info[g].f, info[f].f);
    return mor[gf][info[f].e];
  });
  return b.build(false);
}

// ---------------------------------------------------------------------------

std::pair<Presheaf, NatTrans> subpresheaf(const Presheaf& x,
                                          const std::vector<std::vector<char>>& keep) {
  const auto& c = x.index();
  std::vector<std::vector<Elem>> new_index(c.num_objects());
  std::vector<std::vector<std::string>> names(c.num_objects());
  std::vector<std::vector<Elem>> incl(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    new_index[a].assign(x.size(static_cast<ObjId>(a)), -1);
    for (std::size_t e = 0; e < x.size(static_cast<ObjId>(a)); ++e) {
      if (!keep[a][e]) continue;
      new_index[a][e] = static_cast<Elem>(names[a].size());
      names[a].push_back(x.element_name(static_cast<ObjId>(a), static_cast<Elem>(e)));
      incl[a].push_back(static_cast<Elem>(e));
    }
  }
  std::vector<std::vector<Elem>> actions(c.num_morphisms());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    auto ff = static_cast<MorId>(f);
    for (Elem e : incl[c.dom(ff)]) {
      Elem img = new_index[c.cod(ff)][x.act(ff, e)];
      if (img < 0) fail(ErrorKind::Internal, "element set is not closed under the action");
      actions[f].push_back(img);
    }
  }
  Presheaf sub = Presheaf::make(c, std::move(names), std::move(actions), false);
  NatTrans inc(sub, x, std::move(incl), false);
  return {sub, inc};
}

std::vector<std::vector<char>> closure(const Presheaf& x, const std::vector<ElemRef>& gens) {
  const auto& c = x.index();
  std::vector<std::vector<char>> keep(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) keep[a].assign(x.size(static_cast<ObjId>(a)), 0);
  std::vector<ElemRef> work(gens.begin(), gens.end());
  while (!work.empty()) {
    auto [a, e] = work.back();
    work.pop_back();
    if (keep[a][e]) continue;
    keep[a][e] = 1;
    for (MorId f : c.out(a)) work.push_back({c.cod(f), x.act(f, e)});
  }
  return keep;
}

std::vector<std::vector<std::vector<char>>> subpresheaf_masks(const Presheaf& x) {
  const auto elems = all_elements(x);
  if (elems.size() > 20)
    fail(ErrorKind::SizeBoundExceeded, "too many elements to enumerate sub-presheaves");
  const auto& c = x.index();
  struct Candidate {
    std::size_t count;
    std::vector<std::size_t> members;
    std::vector<std::vector<char>> mask;
  };
  std::vector<Candidate> found;
  const std::uint32_t limit = 1u << elems.size();
  for (std::uint32_t bits = 0; bits < limit; ++bits) {
    std::vector<std::vector<char>> mask(c.num_objects());
    for (std::size_t a = 0; a < c.num_objects(); ++a) mask[a].assign(x.size(static_cast<ObjId>(a)), 0);
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (bits & (1u << i)) mask[elems[i].obj][elems[i].elem] = 1;
    bool closed = true;
    for (std::size_t i = 0; i < elems.size() && closed; ++i) {
      if (!(bits & (1u << i))) continue;
      for (MorId f : c.out(elems[i].obj))
        if (!mask[c.cod(f)][x.act(f, elems[i].elem)]) {
          closed = false;
          break;
        }
    }
    if (!closed) continue;
    Candidate cand;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (bits & (1u << i)) cand.members.push_back(i);
    cand.count = cand.members.size();
    cand.mask = std::move(mask);
    found.push_back(std::move(cand));
  }
  std::sort(found.begin(), found.end(), [](const Candidate& l, const Candidate& r) {
    if (l.count != r.count) return l.count < r.count;
    return l.members < r.members;
  });
  std::vector<std::vector<std::vector<char>>> out;
  for (auto& f : found) out.push_back(std::move(f.mask));
  return out;
}

std::vector<std::vector<char>> image_mask(const NatTrans& t) {
  const auto& c = t.target().index();
  std::vector<std::vector<char>> keep(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    keep[a].assign(t.target().size(static_cast<ObjId>(a)), 0);
    for (Elem y : t.component(static_cast<ObjId>(a))) keep[a][y] = 1;
  }
  return keep;
}

ImageFactorization image_factorization(const NatTrans& t) {
  auto [img, incl] = subpresheaf(t.target(), image_mask(t));
  const auto& c = t.target().index();
  std::vector<std::vector<Elem>> onto(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    std::vector<Elem> pos(t.target().size(static_cast<ObjId>(a)), -1);
    const auto& inc = incl.component(static_cast<ObjId>(a));
    for (std::size_t i = 0; i < inc.size(); ++i) pos[inc[i]] = static_cast<Elem>(i);
    for (Elem y : t.component(static_cast<ObjId>(a))) onto[a].push_back(pos[y]);
  }
  return {img, NatTrans(t.source(), img, std::move(onto), false), incl};
}

// ---------------------------------------------------------------------------

namespace {

// Fills the non-identity actions for fixed carrier sizes by backtracking,
// checking each composite as soon as all three entries are known.
class ActionFiller {
public:
  ActionFiller(const FinCategory& c, std::vector<std::size_t> sizes)
      : c_(c), sizes_(std::move(sizes)) {
    actions_.resize(c.num_morphisms());
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
      auto ff = static_cast<MorId>(f);
      actions_[f].assign(sizes_[c.dom(ff)], -1);
      if (c.is_identity(ff))
        std::iota(actions_[f].begin(), actions_[f].end(), 0);
      else
        for (std::size_t e = 0; e < sizes_[c.dom(ff)]; ++e) slots_.push_back({ff, static_cast<Elem>(e)});
    }
    for (std::size_t g = 0; g < c.num_morphisms(); ++g)
      for (std::size_t f = 0; f < c.num_morphisms(); ++f)
        if (auto gf = c.compose(static_cast<MorId>(g), static_cast<MorId>(f)))
          triples_.push_back({static_cast<MorId>(g), static_cast<MorId>(f), *gf});
  }

  /// order(slot) gives the candidate values to try for a slot.
  void run(const std::function<std::vector<Elem>(std::size_t)>& order,
           const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit) {
    order_ = &order;
    visit_ = &visit;
    stop_ = false;
    recurse(0);
  }

private:
  bool consistent() const {
    for (auto [g, f, h] : triples_) {
      const auto& af = actions_[f];
      for (std::size_t e = 0; e < af.size(); ++e) {
        Elem fe = af[e];
        if (fe < 0) continue;
        Elem gfe = actions_[g][fe];
        Elem he = actions_[h][e];
        if (gfe >= 0 && he >= 0 && gfe != he) return false;
      }
    }
    return true;
  }

  void recurse(std::size_t i) {
    if (stop_) return;
    if (i == slots_.size()) {
      if (!(*visit_)(actions_)) stop_ = true;
      return;
    }
    auto [f, e] = slots_[i];
    for (Elem v : (*order_)(sizes_[c_.cod(f)])) {
      actions_[f][e] = v;
      if (consistent()) recurse(i + 1);
      if (stop_) return;
    }
    actions_[f][e] = -1;
  }

  struct Slot {
    MorId f;
    Elem e;
  };
  struct Triple {
    MorId g, f, h;
  };
  const FinCategory& c_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<Elem>> actions_;
  std::vector<Slot> slots_;
  std::vector<Triple> triples_;
  const std::function<std::vector<Elem>(std::size_t)>* order_ = nullptr;
  const std::function<bool(const std::vector<std::vector<Elem>>&)>* visit_ = nullptr;
  bool stop_ = false;
};

std::vector<std::vector<std::string>> generic_names(const std::vector<std::size_t>& sizes) {
  std::vector<std::vector<std::string>> names(sizes.size());
  int counter = 0;
  for (std::size_t a = 0; a < sizes.size(); ++a)
    for (std::size_t e = 0; e < sizes[a]; ++e) names[a].push_back("e" + std::to_string(counter++));
  return names;
}

void for_each_size_vector(std::size_t n, std::size_t max_total,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> sizes(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t a, std::size_t left) {
    if (a == n) {
      visit(sizes);
      return;
    }
    for (std::size_t s = 0; s <= left; ++s) {
      sizes[a] = s;
      rec(a + 1, left - s);
    }
  };
  rec(0, max_total);
}

} // namespace

std::vector<Presheaf> enumerate_presheaves(const FinCategory& c, std::size_t max_total) {
  std::vector<Presheaf> out;
  for_each_size_vector(c.num_objects(), max_total, [&](const std::vector<std::size_t>& sizes) {
    ActionFiller filler(c, sizes);
    auto names = generic_names(sizes);
    filler.run(
        [](std::size_t n) {
          std::vector<Elem> v(n);
          std::iota(v.begin(), v.end(), 0);
          return v;
        },
        [&](const std::vector<std::vector<Elem>>& actions) {
          out.push_back(Presheaf::make(c, names, actions, false));
          return true;
        });
  });
  return out;
}

Presheaf random_presheaf(const FinCategory& c, std::size_t max_total, std::mt19937_64& rng) {
  const auto n = c.num_objects();
  if (n == 0) return Presheaf(c);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::size_t total = std::uniform_int_distribution<std::size_t>(0, max_total)(rng);
    std::vector<std::size_t> sizes(n, 0);
    for (std::size_t i = 0; i < total; ++i)
      ++sizes[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
    std::optional<Presheaf> found;
    ActionFiller filler(c, sizes);
    filler.run(
        [&](std::size_t k) {
          std::vector<Elem> v(k);
          std::iota(v.begin(), v.end(), 0);
          std::shuffle(v.begin(), v.end(), rng);
          return v;
        },
        [&](const std::vector<std::vector<Elem>>& actions) {
          found = Presheaf::make(c, generic_names(sizes), actions, false);
          return false;
        });
    if (found) return *found;
  }
  return Presheaf(c);
}

std::optional<NatTrans> random_hom(const Presheaf& x, const Presheaf& y, std::mt19937_64& rng,
                                   const Config& cfg) {
  auto homs = enumerate_homs(x, y, cfg);
  if (homs.empty()) return std::nullopt;
  return homs[std::uniform_int_distribution<std::size_t>(0, homs.size() - 1)(rng)];
}

// ---------------------------------------------------------------------------

bool mask_contains(const Mask& outer, const Mask& inner) {
  for (std::size_t a = 0; a < inner.size(); ++a)
    for (std::size_t x = 0; x < inner[a].size(); ++x)
      if (inner[a][x] && !outer[a][x]) return false;
  return true;
}

Mask mask_union(Mask m, const Mask& other) {
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t x = 0; x < m[a].size(); ++x) m[a][x] = m[a][x] || other[a][x];
  return m;
}

Mask empty_mask(const Presheaf& x) {
  Mask m(x.index().num_objects());
  for (std::size_t a = 0; a < m.size(); ++a) m[a].assign(x.size(static_cast<ObjId>(a)), 0);
  return m;
}

std::size_t mask_count(const Mask& m) {
  std::size_t n = 0;
  for (const auto& row : m) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
  return n;
}

NatTrans corestrict(const NatTrans& t, const NatTrans& incl) {
  const auto& c = t.source().index();
  std::vector<std::vector<Elem>> comps(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    auto aa = static_cast<ObjId>(a);
    std::vector<Elem> inv(incl.target().size(aa), -1);
    for (std::size_t s = 0; s < incl.source().size(aa); ++s)
      inv[incl(aa, static_cast<Elem>(s))] = static_cast<Elem>(s);
    for (std::size_t x = 0; x < t.source().size(aa); ++x) {
      Elem v = inv[t(aa, static_cast<Elem>(x))];
      if (v < 0) fail(ErrorKind::Internal, "corestriction outside the image");
      comps[a].push_back(v);
    }
  }
  return NatTrans(t.source(), incl.source(), std::move(comps), false);
}

} // namespace lfp
