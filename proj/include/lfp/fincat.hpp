#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lfp/config.hpp"
#include "lfp/error.hpp"

namespace lfp {

using ObjId = int;
using MorId = int;

struct RawMorphism {
  std::string id;
  std::string dom;
  std::string cod;
};

struct RawComposite {
  std::string g;
  std::string f;
  std::string result;
};

/// Category as it appears on disk: string ids, explicit composition table.
struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawMorphism> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<RawComposite> compose;
};

/// A finite category given by explicit tables. Immutable; copies share storage.
class FinCategory {
public:
  struct Impl;

  FinCategory();

  std::size_t num_objects() const;
  std::size_t num_morphisms() const;
  const std::string& object_name(ObjId a) const;
  const std::string& morphism_name(MorId f) const;
  ObjId dom(MorId f) const;
  ObjId cod(MorId f) const;
  MorId identity(ObjId a) const;
  bool is_identity(MorId f) const;
  /// g ∘ f, or nullopt when cod(f) != dom(g).
  std::optional<MorId> compose(MorId g, MorId f) const;
  /// g ∘ f for a composable pair; throws otherwise.
  MorId then(MorId f, MorId g) const;
  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;
  ObjId object(std::string_view name) const;
  MorId morphism(std::string_view name) const;
  const std::vector<MorId>& hom(ObjId a, ObjId b) const;
  /// Morphisms with domain a, identities included.
  const std::vector<MorId>& out(ObjId a) const;
  const std::vector<MorId>& in(ObjId b) const;

  RawCategory to_raw() const;
  bool empty() const { return num_objects() == 0; }

  /// Same storage, or identical tables and names.
  bool operator==(const FinCategory& other) const;

private:
  friend class CategoryBuilder;
  explicit FinCategory(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Assembles a category from names. `build` checks the category laws unless
/// told otherwise; internal constructions that are correct by construction
/// skip the cubic associativity sweep.
class CategoryBuilder {
public:
  ObjId add_object(std::string name);
  /// Adds an object together with its identity morphism `id_<name>`.
  ObjId add_object_with_identity(std::string name);
  MorId add_morphism(std::string name, ObjId dom, ObjId cod);
  void set_identity(ObjId a, MorId f);
  void set_composite(MorId g, MorId f, MorId result);
  /// Fills every composable pair from a callback returning g ∘ f.
  void fill_composites(const std::function<MorId(MorId g, MorId f)>& comp);

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }

  FinCategory build(bool check_laws = true, std::size_t max_morphisms = 0) const;

private:
  std::vector<std::string> objects_;
  std::vector<std::string> morphisms_;
  std::vector<ObjId> dom_;
  std::vector<ObjId> cod_;
  std::vector<MorId> identity_;
  std::vector<std::tuple<MorId, MorId, MorId>> composites_;
};

FinCategory validate_category(const RawCategory& raw,
                              const Config& cfg = default_config());

struct RawFunctor {
  std::map<std::string, std::string> on_objects;
  std::map<std::string, std::string> on_morphisms;
};

class FinFunctor {
public:
  /// Checks dom/cod, identities and every composite; throws BadFunctor.
  FinFunctor(FinCategory source, FinCategory target, std::vector<ObjId> on_objects,
             std::vector<MorId> on_morphisms);

  static FinFunctor identity(const FinCategory& c);
  static FinFunctor constant(const FinCategory& source, const FinCategory& target,
                             ObjId j);

  const FinCategory& source() const { return source_; }
  const FinCategory& target() const { return target_; }
  ObjId operator()(ObjId a) const { return objects_[a]; }
  MorId map(MorId f) const { return morphisms_[f]; }
  const std::vector<ObjId>& object_map() const { return objects_; }
  const std::vector<MorId>& morphism_map() const { return morphisms_; }

  RawFunctor to_raw() const;

private:
  FinCategory source_;
  FinCategory target_;
  std::vector<ObjId> objects_;
  std::vector<MorId> morphisms_;
};

FinFunctor validate_functor(const FinCategory& source, const FinCategory& target,
                            const RawFunctor& raw);

bool is_connected(const FinCategory& c);
bool is_filtered(const FinCategory& c);
bool is_essentially_surjective(const FinFunctor& f);
bool is_full(const FinFunctor& f);

/// j ↓ F: objects (i, φ : j → F(i)), arrows α : i → i' with F(α)φ = φ'.
FinCategory build_comma(const FinFunctor& f, ObjId j);
/// F ↓ j: objects (i, φ : F(i) → j), arrows α : i → i' with φ'F(α) = φ.
/// The indexing category of pointwise left Kan extensions.
FinCategory build_comma_over(const FinFunctor& f, ObjId j);

/// Either comma category with, per object, its (i, φ) and, per morphism, the
/// underlying morphism of the source. Morphism ids follow the category's.
struct CommaData {
  FinCategory cat;
  std::vector<ObjId> source_object;
  std::vector<MorId> phi;
  std::vector<MorId> source_morphism;
};
CommaData comma_data(const FinFunctor& f, ObjId j, bool under);

/// Every j ↓ F nonempty and connected.
bool is_final(const FinFunctor& f);

/// All functors between two small categories, in lexicographic order of the
/// object map, then of the morphism map.
std::vector<FinFunctor> enumerate_functors(const FinCategory& source,
                                           const FinCategory& target);

/// Small categories used as diagram shapes and index categories.
namespace catalog {
FinCategory terminal();
FinCategory discrete(std::size_t n);
/// E ⇉ V with arrows src, tgt; copresheaves over it are directed multigraphs.
FinCategory parallel_pair();
/// 0 → 1 → ... → n-1 as a poset.
FinCategory linear(std::size_t n);
/// l ← c → r
FinCategory span();
/// l → c ← r
FinCategory cospan();
/// One object, morphisms the cyclic group of order n.
FinCategory cyclic(std::size_t n);
/// One object with a non-identity idempotent e.
FinCategory idempotent();
/// Named shapes with at most three objects, for randomized suites.
std::vector<std::pair<std::string, FinCategory>> small_shapes();
} // namespace catalog

} // namespace lfp
