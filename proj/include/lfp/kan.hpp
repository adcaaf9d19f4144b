#pragma once

#include "lfp/colimit.hpp"

namespace lfp {

/// u : I → J between finite index categories, acting on copresheaves.
struct LfpMorphism {
  FinFunctor u;
  const FinCategory& source() const { return u.source(); }
  const FinCategory& target() const { return u.target(); }
};

/// X ∘ u, pointwise; element names are kept.
Presheaf restrict(const LfpMorphism& f, const Presheaf& x);
NatTrans restrict(const LfpMorphism& f, const NatTrans& t);

/// Left Kan extension along u: at j, the colimit of X over u ↓ j.
/// Elements are named `(i,φ):x` after a representative.
Presheaf lan(const LfpMorphism& f, const Presheaf& x);
NatTrans lan(const LfpMorphism& f, const NatTrans& t);

/// η : X → restrict(lan X).
NatTrans unit(const LfpMorphism& f, const Presheaf& x);
/// ε : lan(restrict A) → A.
NatTrans counit(const LfpMorphism& f, const Presheaf& a);

/// The adjunct of ψ : lan X → Y, namely restrict(ψ) ∘ η.
NatTrans transpose(const LfpMorphism& f, const Presheaf& x, const NatTrans& psi);
/// The adjunct of φ : X → restrict Y, namely ε ∘ lan(φ).
NatTrans transpose_back(const LfpMorphism& f, const NatTrans& phi, const Presheaf& y);

struct AdjunctionReport {
  bool ok = false;
  std::size_t left = 0;  ///< |hom(lan X, Y)|
  std::size_t right = 0; ///< |hom(X, restrict Y)|
  bool triangles = false;
  bool natural = false;
  std::string failure;
};
/// Bijection by enumeration, both triangle identities, and naturality in Y
/// against every endomorphism of Y.
AdjunctionReport check_adjunction(const LfpMorphism& f, const Presheaf& x, const Presheaf& y,
                                  const Config& cfg = default_config());

} // namespace lfp
