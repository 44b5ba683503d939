#pragma once

#include <random>

#include "tamecft/campaign.hpp"

namespace support {

using namespace tamecft;

/// Exact Laurent polynomial s^v (c0 + c1 s + ...), c0 != 0, v in [-3, 3].
inline Series random_local(std::mt19937_64& rng, const SeriesField<FqElt>& sf) {
  const FieldSpec& f = sf.coeff;
  const int v = static_cast<int>(rng() % 7) - 3;
  const int n = 1 + static_cast<int>(rng() % 5);
  std::vector<FqElt> c;
  c.push_back(f.element(1 + rng() % (f.q() - 1)));
  for (int i = 1; i < n; ++i) c.push_back(f.element(rng() % f.q()));
  return Series::from_coeffs(sf, v, c);
}

/// 1 + u * (random polynomial): a 1-unit at both axes and at every prime of P.
inline FactoredElement random_one_unit(std::mt19937_64& rng, const NodeRing& ring) {
  const FieldSpec& f = ring.field();
  TriPoly p = TriPoly::constant(f.one());
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < terms; ++i) {
    p = p + TriPoly::monomial(f.element(rng() % f.q()), 1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 2),
                              static_cast<int>(rng() % 2));
  }
  return FactoredElement::unit(p, 1 + static_cast<std::int64_t>(rng() % 2));
}

inline FactoredElement random_element(std::mt19937_64& rng, const NodeRing& ring) {
  Lcg64 lcg(rng());
  return tamecft::random_element(lcg, ring);
}

}  // namespace support
