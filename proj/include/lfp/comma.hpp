#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfp/generator.hpp"
#include "lfp/kan.hpp"

namespace lfp {

/// f : restrict(A) → B, with A over the target index of the morphism and B over its source.
struct CommaObject {
  Presheaf a;
  Presheaf b;
  NatTrans f;
};

/// Throws ValidationError unless f : restrict(a) → b.
CommaObject make_comma_object(const LfpMorphism& u, const Presheaf& a, const Presheaf& b,
                              const NatTrans& f);

/// (α, β) with β ∘ f = f′ ∘ restrict(α).
struct CommaMap {
  NatTrans alpha;
  NatTrans beta;
  bool operator==(const CommaMap& o) const { return alpha == o.alpha && beta == o.beta; }
};

bool is_comma_map(const LfpMorphism& u, const CommaObject& x, const CommaObject& y,
                  const CommaMap& m);
CommaMap compose(const CommaMap& g, const CommaMap& f);
CommaMap identity_map(const CommaObject& x);
std::vector<CommaMap> enumerate_comma_homs(const LfpMorphism& u, const CommaObject& x,
                                           const CommaObject& y,
                                           const Config& cfg = default_config());
std::optional<CommaMap> find_comma_iso(const LfpMorphism& u, const CommaObject& x,
                                       const CommaObject& y, const Config& cfg = default_config());

struct CommaDiagram {
  FinCategory shape;
  std::vector<CommaObject> objects;
  std::vector<CommaMap> arrows; ///< per shape morphism, identities included
};
CommaDiagram make_comma_diagram(const LfpMorphism& u, const FinCategory& shape,
                                std::vector<CommaObject> objects,
                                const std::map<MorId, CommaMap>& arrows);

struct CommaCocone {
  CommaObject apex;
  std::vector<CommaMap> legs;
};

/// Partwise limits with the induced arrow; checks that restrict preserves the limit.
CommaCocone comma_limit(const LfpMorphism& u, const CommaDiagram& d,
                        const Config& cfg = default_config());
/// Partwise colimits of a finite filtered diagram with the induced arrow.
CommaCocone comma_filtered_colimit(const LfpMorphism& u, const CommaDiagram& d,
                                   const Config& cfg = default_config());

/// A chain of comma objects: A_n, B_n and f_n : restrict(A_n) → B_n.
struct CommaChain {
  std::string name;
  IndObject a;
  IndObject b;
  std::function<NatTrans(std::size_t)> f;
};
/// Stage n of the colimit chain.
CommaObject comma_stage(const CommaChain& c, std::size_t n);
/// A_n = X_n, B_n = restrict(X_n), f_n the identity.
CommaChain comma_chain_growing_a(const LfpMorphism& u, const IndObject& x);
/// A fixed, B_n = restrict(A) ⊔ Y_n, f_n the first injection.
CommaChain comma_chain_growing_b(const LfpMorphism& u, const Presheaf& a, const IndObject& y);
/// A_n = X_n, B_n = restrict(X_n) ⊔ Y_n.
CommaChain comma_chain_growing_both(const LfpMorphism& u, const IndObject& x, const IndObject& y);
/// Every built-in family in each of the three arrangements, where defined.
std::vector<CommaChain> default_comma_chains(const LfpMorphism& u, const Presheaf& fixed_a,
                                             std::size_t bound);

/// M finite over J; k : K → K′ and a : K → restrict(M) over I.
struct CommaGeneratorDatum {
  Presheaf m;
  NatTrans k;
  NatTrans a;
};

struct CommaEvaluation {
  Pushout square;
  CommaObject object;
};
CommaEvaluation evaluate_comma_square(const LfpMorphism& u, const CommaGeneratorDatum& d);
CommaObject evaluate_comma_datum(const LfpMorphism& u, const CommaGeneratorDatum& d);

/// (0, restrict(0) ⊔ B, first injection).
CommaObject comma_cod_star(const LfpMorphism& u, const Presheaf& b);
/// hom(cod*(B), y) ≅ hom(B, y.b) plus both triangle identities.
bool check_comma_cod_star_adjunction(const LfpMorphism& u, const Presheaf& b,
                                     const CommaObject& y, const Config& cfg = default_config());

/// (A, restrict(A), identity).
CommaObject one_comma(const LfpMorphism& u, const Presheaf& a);

/// Pushout of the counit ε_A along lan(f): A → P ← lan(B).
struct OneStar {
  Pushout square;
  const Presheaf& object() const { return square.object; }
};
OneStar one_star(const LfpMorphism& u, const CommaObject& f);
/// hom(one_star(f), A′) ≅ hom(f, one_comma(A′)) by enumeration, with the
/// triangle identity on one_comma(A′).
bool check_one_star_adjunction(const LfpMorphism& u, const CommaObject& f, const Presheaf& a2,
                               const Config& cfg = default_config());
/// hom(one_comma(A), g) ≅ hom(A, g.a).
bool check_projection_adjunction(const LfpMorphism& u, const Presheaf& a, const CommaObject& g,
                                 const Config& cfg = default_config());

struct CommaFpCertificate {
  bool ok = false;
  std::string chain;
  std::size_t arrows = 0;
  std::vector<int> m_stages;    ///< stages of the lifts of the A-part
  std::vector<int> k_stages;    ///< stages of the lifts of the B-part
  std::vector<int> lift_stages; ///< joint stages
  std::vector<int> refinement_stages;
  std::string failure;
};
CommaFpCertificate comma_fp_certificate(const LfpMorphism& u, const CommaGeneratorDatum& d,
                                        const CommaChain& chain, int test_stage = 2,
                                        const Config& cfg = default_config());

DecompositionCertificate comma_decomposition(const LfpMorphism& u, const CommaObject& f,
                                             std::size_t budget,
                                             const Config& cfg = default_config());

struct CommaRetractSplitting {
  CommaGeneratorDatum datum;
  CommaMap iso;
  RetractSplitting coslice;
};
/// s : R → E and r : E → R with r ∘ s = 1, E = evaluate_comma_datum(d).
CommaRetractSplitting comma_split_retract(const LfpMorphism& u, const CommaGeneratorDatum& d,
                                          const CommaObject& retract, const CommaMap& s,
                                          const CommaMap& r, const Config& cfg = default_config());

/// Functors C → presheaves over J and C → presheaves over I as tables, and
/// λ : restrict ∘ G ⇒ H objectwise.
struct TwoCell {
  FinCategory c;
  std::vector<Presheaf> g_objects;
  std::vector<NatTrans> g_arrows; ///< per morphism of c, identities included
  std::vector<Presheaf> h_objects;
  std::vector<NatTrans> h_arrows;
  std::vector<NatTrans> lambda;
};

struct TwoCellFactorization {
  std::vector<CommaObject> objects;
  std::vector<CommaMap> arrows;
  bool projections_strict = false; ///< π1 ∘ S = G and cod ∘ S = H
  bool whiskering = false;         ///< f_{S(C)} = λ_C
  std::size_t functors = 0;        ///< candidate functors enumerated
  std::size_t satisfying = 0;      ///< those meeting all three equations
  bool unique() const { return satisfying == 1; }
  bool ok() const { return projections_strict && whiskering && unique(); }
};
/// Throws ValidationError when G, H are not functors or λ is not natural.
TwoCellFactorization factor_two_cell(const LfpMorphism& u, const TwoCell& cell,
                                     const Config& cfg = default_config());

} // namespace lfp
