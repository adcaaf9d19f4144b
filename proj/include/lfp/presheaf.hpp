#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lfp/config.hpp"
#include "lfp/fincat.hpp"

namespace lfp {

using Elem = int;

struct RawPresheaf {
  std::map<std::string, std::vector<std::string>> carrier;
  std::map<std::string, std::map<std::string, std::string>> action;
};

/// Finite covariant functor from an index category into finite sets.
/// Elements are indices into per-object carriers; names are for I/O only.
class Presheaf {
public:
  struct Impl;

  Presheaf();
  /// The empty presheaf over `index`.
  explicit Presheaf(FinCategory index);

  /// `actions[f][x]` is X(f)(x). Identity actions may be left empty.
  /// Throws BadIdentityAction / BadCompositeAction when `check` is set.
  static Presheaf make(FinCategory index, std::vector<std::vector<std::string>> names,
                       std::vector<std::vector<Elem>> actions, bool check = true);

  const FinCategory& index() const;
  std::size_t size(ObjId a) const;
  std::size_t total_size() const;
  const std::string& element_name(ObjId a, Elem x) const;
  const std::vector<std::string>& element_names(ObjId a) const;
  std::optional<Elem> find_element(ObjId a, std::string_view name) const;
  Elem element(ObjId a, std::string_view name) const;
  Elem act(MorId f, Elem x) const;
  const std::vector<Elem>& action(MorId f) const;

  RawPresheaf to_raw() const;
  /// Identical tables and names (not isomorphism).
  bool operator==(const Presheaf& other) const;

private:
  explicit Presheaf(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Also enforces pairwise disjoint element ids across objects.
Presheaf validate_presheaf(const FinCategory& index, const RawPresheaf& raw);

class NatTrans {
public:
  NatTrans() = default;
  /// Checks every naturality square unless `check` is false; throws BadNaturality.
  NatTrans(Presheaf source, Presheaf target, std::vector<std::vector<Elem>> components,
           bool check = true);

  static NatTrans identity(const Presheaf& x);
  /// The unique map out of an empty presheaf.
  static NatTrans from_empty(const Presheaf& empty, const Presheaf& y);

  const Presheaf& source() const { return source_; }
  const Presheaf& target() const { return target_; }
  Elem operator()(ObjId a, Elem x) const { return components_[a][x]; }
  const std::vector<Elem>& component(ObjId a) const { return components_[a]; }
  const std::vector<std::vector<Elem>>& components() const { return components_; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const { return is_injective() && is_surjective(); }
  /// Inverse of an isomorphism; throws otherwise.
  NatTrans inverse() const;

  /// Same components; endpoints compared by table identity.
  bool operator==(const NatTrans& other) const { return components_ == other.components_; }
  bool operator<(const NatTrans& other) const { return components_ < other.components_; }

private:
  Presheaf source_;
  Presheaf target_;
  std::vector<std::vector<Elem>> components_;
};

/// g ∘ f.
NatTrans compose(const NatTrans& g, const NatTrans& f);
NatTrans validate_nat_trans(const Presheaf& source, const Presheaf& target,
                            const std::map<std::string, std::map<std::string, std::string>>& raw);
std::map<std::string, std::map<std::string, std::string>> to_raw(const NatTrans& t);

struct HomSearch {
  /// Restricts the value of (object, element); checked as values are tried.
  std::function<bool(ObjId, Elem, Elem)> allowed;
  bool injective = false;
};

/// Calls `visit` on each natural transformation X → Y in lexicographic order of
/// (object, element) components. `visit` returns false to stop early.
void for_each_hom(const Presheaf& x, const Presheaf& y,
                  const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit,
                  const Config& cfg = default_config(), const HomSearch& search = {});
std::vector<NatTrans> enumerate_homs(const Presheaf& x, const Presheaf& y,
                                     const Config& cfg = default_config(),
                                     const HomSearch& search = {});
std::size_t count_homs(const Presheaf& x, const Presheaf& y,
                       const Config& cfg = default_config(), const HomSearch& search = {});
std::optional<NatTrans> first_hom(const Presheaf& x, const Presheaf& y,
                                  const Config& cfg = default_config(),
                                  const HomSearch& search = {});
std::optional<NatTrans> find_iso(const Presheaf& x, const Presheaf& y,
                                 const Config& cfg = default_config());
bool isomorphic(const Presheaf& x, const Presheaf& y, const Config& cfg = default_config());

/// The hom functor C(a, -); elements are named by morphism ids.
Presheaf representable(const FinCategory& c, ObjId a);
/// One element `*` at every object.
Presheaf terminal_presheaf(const FinCategory& c);
/// Every element of x as its own object, arrows from the action.
FinCategory category_of_elements(const Presheaf& x);

/// Elements of a presheaf as a flat list (object order, then element order).
struct ElemRef {
  ObjId obj;
  Elem elem;
  bool operator==(const ElemRef&) const = default;
  auto operator<=>(const ElemRef&) const = default;
};
std::vector<ElemRef> all_elements(const Presheaf& x);

/// Sub-presheaf on a set of elements closed under the action, keeping names,
/// together with its inclusion. `keep[a][x]` marks membership.
std::pair<Presheaf, NatTrans> subpresheaf(const Presheaf& x,
                                          const std::vector<std::vector<char>>& keep);
/// Smallest sub-presheaf containing the given elements.
std::vector<std::vector<char>> closure(const Presheaf& x, const std::vector<ElemRef>& gens);
/// All closed element sets, ordered by size, then lexicographically by membership.
std::vector<std::vector<std::vector<char>>> subpresheaf_masks(const Presheaf& x);
/// Image of t as a membership mask on t.target().
std::vector<std::vector<char>> image_mask(const NatTrans& t);
/// Factors t through its image: (image, t': source → image, inclusion).
struct ImageFactorization {
  Presheaf image;
  NatTrans onto;
  NatTrans inclusion;
};
ImageFactorization image_factorization(const NatTrans& t);

using Mask = std::vector<std::vector<char>>;
bool mask_contains(const Mask& outer, const Mask& inner);
Mask mask_union(Mask m, const Mask& other);
/// No element of x.
Mask empty_mask(const Presheaf& x);
std::size_t mask_count(const Mask& m);
/// t : X → Y with image inside the injective incl : S → Y, as a map X → S.
NatTrans corestrict(const NatTrans& t, const NatTrans& incl);

/// Every presheaf over c with total size ≤ max_total, elements named `e0, e1, ...`.
/// Not up to isomorphism.
std::vector<Presheaf> enumerate_presheaves(const FinCategory& c, std::size_t max_total);
/// A presheaf with total size ≤ max_total chosen by randomized backtracking.
Presheaf random_presheaf(const FinCategory& c, std::size_t max_total, std::mt19937_64& rng);
/// A random natural transformation x → y, if any exists.
std::optional<NatTrans> random_hom(const Presheaf& x, const Presheaf& y, std::mt19937_64& rng,
                                   const Config& cfg = default_config());

} // namespace lfp
