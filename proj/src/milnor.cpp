#include "tamecft/milnor.hpp"

namespace tamecft {

Series tame_symbol_at_prime(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                            const std::string& id, const Convention& conv) {
  const Place p = Place::prime(id);
  const std::int64_t a = ord_at(ring, f, p);
  const std::int64_t b = ord_at(ring, g, p);
  const FactoredElement h = f.pow(b) * g.pow(-a);
  Series out = restrict_to_prime(ring, h, id);
  if (!conv.drop_sign && ((a * b) & 1)) out = -out;
  return out;
}

std::string LocalInvariant::to_string() const {
  return "(" + rho.to_string() + "," + std::to_string(b) + "," + lambda.to_string() + ")";
}

LevelInvariant reduce_to_level(const LocalInvariant& inv, std::uint64_t n) {
  const FieldSpec& f = inv.rho.field();
  if (n == 0 || (f.q() - 1) % n != 0) throw Error(Errc::TamenessViolated, "n must divide q-1");
  const std::int64_t e = static_cast<std::int64_t>((f.q() - 1) / n);
  const std::int64_t sn = static_cast<std::int64_t>(n);
  return {inv.rho.pow(e), ((inv.b % sn) + sn) % sn, inv.lambda.pow(e)};
}

Series axis_boundary(const AxisResidue& f, const AxisResidue& g, const Convention& conv) {
  Series out = f.lc.pow(g.val) * g.lc.pow(-f.val);
  if (!conv.drop_sign && ((f.val * g.val) & 1)) out = -out;
  return out;
}

LocalInvariant k2_axis_invariant(const AxisResidue& f, const AxisResidue& g, const Convention& conv) {
  LocalInvariant out;
  out.rho = tame_symbol_local(f.lc, g.lc, conv);
  const auto [b, lambda] = axis_boundary(f, g, conv).val_lc();
  out.b = b;
  out.lambda = lambda;
  return out;
}

LocalInvariant k2_axis_invariant(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g, Axis axis,
                                 const Convention& conv) {
  return k2_axis_invariant(axis_residue(ring, f, axis, ring.precision()),
                           axis_residue(ring, g, axis, ring.precision()), conv);
}

FqElt triple_tame_axis(const AxisResidue& f, const AxisResidue& g, const AxisResidue& h, const Convention& conv) {
  const FieldSpec& k = f.lc.field().coeff;
  // {-1, w} in K_2(k) has tame symbol (-1)^{v(w)}.
  auto minus_one_pair = [&](const Series& w, std::int64_t e) {
    if (conv.drop_sign || ((w.val_lc().first * e) & 1) == 0) return k.one();
    return -k.one();
  };
  const std::int64_t a1 = f.val, a2 = g.val, a3 = h.val;
  FqElt out = tame_symbol_local(g.lc, h.lc, conv).pow(a1);
  out *= tame_symbol_local(f.lc, h.lc, conv).pow(-a2);
  out *= tame_symbol_local(f.lc, g.lc, conv).pow(a3);
  out *= minus_one_pair(h.lc, a1 * a2);
  out *= minus_one_pair(g.lc, a1 * a3);
  out *= minus_one_pair(f.lc, a2 * a3);
  return out;
}

FqElt triple_tame_axis(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                       const FactoredElement& h, Axis axis, const Convention& conv) {
  const int prec = ring.precision();
  return triple_tame_axis(axis_residue(ring, f, axis, prec), axis_residue(ring, g, axis, prec),
                          axis_residue(ring, h, axis, prec), conv);
}

}  // namespace tamecft
