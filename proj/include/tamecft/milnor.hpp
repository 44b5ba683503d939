#pragma once

// Tame symbols and the K_2 invariants at the axes of the node ring.

#include <cstdint>
#include <string>

#include "tamecft/ring_node.hpp"

namespace tamecft {

/// Sign and orientation conventions. The defaults are the correct ones; the
/// other settings exist as negative controls.
struct Convention {
  bool drop_sign = false;
  bool flip_axis_orientation = false;
};

/// (-1)^{ab} lc(f)^b lc(g)^{-a} with a = v(f), b = v(g), over any coefficient
/// field. Nested series return the full residue-field element.
template <class C>
C tame_symbol_local(const LaurentSeries<C>& f, const LaurentSeries<C>& g, const Convention& conv = {}) {
  const auto [a, fa] = f.val_lc();
  const auto [b, gb] = g.val_lc();
  C out = fa.pow(b) * gb.pow(-static_cast<std::int64_t>(a));
  if (!conv.drop_sign && ((static_cast<std::int64_t>(a) * b) & 1)) out = -out;
  return out;
}

/// Boundary at a registered prime; result lives in F_{q^d}((s))^x.
Series tame_symbol_at_prime(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                            const std::string& id, const Convention& conv = {});

/// Class of {f,g} in K_2(L)/U^1 at an axis, split along u and the residue
/// coordinate: rho = {w, w'} in K_2(k) through the residue tame symbol, and
/// (b, lambda) = val_lc of the L-level tame symbol c in k^x.
struct LocalInvariant {
  FqElt rho;
  std::int64_t b = 0;
  FqElt lambda;

  std::string to_string() const;
  friend bool operator==(const LocalInvariant& a, const LocalInvariant& b) {
    return a.rho == b.rho && a.b == b.b && a.lambda == b.lambda;
  }
};

/// Classes modulo n-th powers, represented by z^{(q-1)/n} in mu_n.
struct LevelInvariant {
  FqElt rho;
  std::int64_t b = 0;
  FqElt lambda;
  friend bool operator==(const LevelInvariant& a, const LevelInvariant& b) {
    return a.rho == b.rho && a.b == b.b && a.lambda == b.lambda;
  }
};

LevelInvariant reduce_to_level(const LocalInvariant& inv, std::uint64_t n);

/// L-level tame symbol c in k^x = F_q((t))^x.
Series axis_boundary(const AxisResidue& f, const AxisResidue& g, const Convention& conv = {});

LocalInvariant k2_axis_invariant(const AxisResidue& f, const AxisResidue& g, const Convention& conv = {});
LocalInvariant k2_axis_invariant(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g, Axis axis,
                                 const Convention& conv = {});

/// Iterated boundary of {f,g,h}: first along u, then along the residue coordinate.
FqElt triple_tame_axis(const AxisResidue& f, const AxisResidue& g, const AxisResidue& h, const Convention& conv = {});
FqElt triple_tame_axis(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                       const FactoredElement& h, Axis axis, const Convention& conv = {});

}  // namespace tamecft
