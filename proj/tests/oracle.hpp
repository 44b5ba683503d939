#pragma once

// Brute-force reference evaluations used by the tests. They share no code
// path with the symbol routines: no valuation bookkeeping on factored forms,
// no residue shortcuts, only direct series products.

#include <cstdint>
#include <string>
#include <vector>

#include "tamecft/cft.hpp"

namespace oracle {

using namespace tamecft;

// Truncated Laurent series kept as (valuation, N known coefficients).
struct TruncSeries {
  int val = 0;
  std::vector<FqElt> c;

  static TruncSeries from(const Series& s, int n) {
    TruncSeries t;
    t.val = s.valuation();
    for (int i = 0; i < n; ++i) t.c.push_back(s.coeff_or_zero(t.val + i));
    return t;
  }

  void strip() {
    std::size_t lead = 0;
    while (lead + 1 < c.size() && c[lead].is_zero()) ++lead;
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
    val += static_cast<int>(lead);
  }

  TruncSeries operator*(const TruncSeries& b) const {
    TruncSeries r;
    r.val = val + b.val;
    const std::size_t n = std::min(c.size(), b.c.size());
    r.c.assign(n, c.front().field().zero());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; i + j < n; ++j) r.c[i + j] = r.c[i + j] + c[i] * b.c[j];
    }
    r.strip();
    return r;
  }

  TruncSeries inverse() const {
    const FieldSpec f = c.front().field();
    TruncSeries r;
    r.val = -val;
    const FqElt b0 = c.front().inv();
    r.c.push_back(b0);
    for (std::size_t k = 1; k < c.size(); ++k) {
      FqElt acc = f.zero();
      for (std::size_t i = 1; i <= k; ++i) acc = acc + c[i] * r.c[k - i];
      r.c.push_back(f.zero() - b0 * acc);
    }
    return r;
  }

  FqElt at(int k) const {
    const int i = k - val;
    if (i < 0) return c.front().field().zero();
    if (i >= static_cast<int>(c.size())) throw Error(Errc::PrecisionExhausted, "oracle window");
    return c[static_cast<std::size_t>(i)];
  }
};

// f^b g^{-a} by repeated multiplication, then the s^0 coefficient, signed.
inline FqElt local_symbol(const Series& f, const Series& g, int terms = 12) {
  const TruncSeries F = TruncSeries::from(f, terms);
  const TruncSeries G = TruncSeries::from(g, terms);
  const int a = F.val, b = G.val;
  const TruncSeries Finv = F.inverse(), Ginv = G.inverse();
  TruncSeries h;
  h.val = 0;
  h.c.assign(static_cast<std::size_t>(terms), f.field().coeff.zero());
  h.c[0] = f.field().coeff.one();
  for (int i = 0; i < std::abs(b); ++i) h = h * (b > 0 ? F : Finv);
  for (int i = 0; i < std::abs(a); ++i) h = h * (a > 0 ? Ginv : G);
  FqElt out = h.at(0);
  if ((static_cast<std::int64_t>(a) * b) % 2 != 0) out = f.field().coeff.zero() - out;
  return out;
}

// Same brute evaluation one level up: the t^0 coefficient of F^b G^{-a}
// in F((s))((t)), an element of F((s)).
inline Series nested_symbol(const SeriesOverSeries& F, const SeriesOverSeries& G) {
  const int a = F.valuation(), b = G.valuation();
  SeriesOverSeries h = SeriesOverSeries::one(F.field());
  const SeriesOverSeries Finv = F.inv(), Ginv = G.inv();
  for (int i = 0; i < std::abs(b); ++i) h = h * (b > 0 ? F : Finv);
  for (int i = 0; i < std::abs(a); ++i) h = h * (a > 0 ? Ginv : G);
  Series out = h.coeff(0);
  if ((static_cast<std::int64_t>(a) * b) % 2 != 0) out = -out;
  return out;
}

// Chart at a prime p with parametrization phi: x = phi_x(s) + t,
// y = s^M (phi_x(s) + t)^{-1}, u = s. The prime is t = 0.
struct PrimeChart {
  const NodeRing& ring;
  const PrimeCertificate& cert;
  SeriesField<Series> nf;
  SeriesOverSeries X, Y, U;
  const Embedding* emb = nullptr;

  PrimeChart(const NodeRing& r, const std::string& id, int outer_prec = 6, int inner_prec = 16)
      : ring(r), cert(r.prime(id)) {
    const FieldSpec big = cert.residue_field;
    nf = {series_field(big, inner_prec), outer_prec};
    if (big != r.field()) emb = find_embedding(r.field(), big);
    auto lift = [&](const Series& s) { return Series::from_coeffs(nf.coeff, s.valuation(), s.coeffs()); };
    const Series px = lift(cert.phi_x);
    X = SeriesOverSeries::from_coeffs(nf, 0, {px, Series::one(nf.coeff)});
    U = SeriesOverSeries::monomial(nf, lift(cert.phi_u), 0);
    Y = SeriesOverSeries::monomial(nf, lift(cert.phi_u).pow(r.M()), 0) * X.inv();
  }

  FqElt coeff(const FqElt& c) const { return emb ? emb->map(c) : c; }

  SeriesOverSeries poly(const TriPoly& p) const {
    SeriesOverSeries acc = SeriesOverSeries::zero(nf);
    for (const auto& [e, c] : p.terms()) {
      SeriesOverSeries term = SeriesOverSeries::monomial(nf, Series::monomial(nf.coeff, coeff(c), 0), 0);
      for (int i = 0; i < e[0]; ++i) term = term * U;
      for (int i = 0; i < e[1]; ++i) term = term * X;
      for (int i = 0; i < e[2]; ++i) term = term * Y;
      acc = acc + term;
    }
    return acc;
  }

  SeriesOverSeries power(const SeriesOverSeries& b, std::int64_t k) const {
    SeriesOverSeries out = SeriesOverSeries::one(nf);
    const SeriesOverSeries step = k >= 0 ? b : b.inv();
    for (std::int64_t i = 0; i < std::abs(k); ++i) out = out * step;
    return out;
  }

  SeriesOverSeries element(const FactoredElement& f) const {
    SeriesOverSeries acc = power(X, f.ex()) * power(Y, f.ey()) * power(U, f.eu());
    for (const auto& uf : f.units()) acc = acc * power(poly(uf.poly), uf.exp);
    for (const auto& [id, k] : f.prime_exps()) acc = acc * power(poly(ring.prime(id).defining), k);
    return acc;
  }

  Series symbol(const FactoredElement& f, const FactoredElement& g) const {
    return nested_symbol(element(f), element(g));
  }
};

// Axis invariant from the full nested embeddings.
inline LocalInvariant axis_invariant(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                                     Axis axis, int prec = 8) {
  const SeriesOverSeries F = embed_at_axis(ring, f, axis, prec);
  const SeriesOverSeries G = embed_at_axis(ring, g, axis, prec);
  const Series c = nested_symbol(F, G);
  LocalInvariant out;
  out.rho = local_symbol(F.coeffs().front(), G.coeffs().front(), prec);
  out.b = c.valuation();
  out.lambda = c.coeffs().front();
  return out;
}

// {f,g,h} expanded over f = u^a w: every slot is u or a unit; u's are moved
// to the front with signs, {u,u} = {u,-1}, and the boundary along u drops the
// leading u. The remaining K_2(k) symbol goes through the local oracle.
inline FqElt triple_symbol(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                           const FactoredElement& h, Axis axis, int prec = 8) {
  const FactoredElement* in[3] = {&f, &g, &h};
  Series w[3];
  std::int64_t a[3];
  for (int i = 0; i < 3; ++i) {
    const SeriesOverSeries e = embed_at_axis(ring, *in[i], axis, prec);
    a[i] = e.valuation();
    w[i] = e.coeffs().front();
  }
  const FieldSpec& k = ring.field();
  const auto sf = w[0].field();
  const Series minus_one = Series::monomial(sf, -k.one(), 0);
  FqElt out = k.one();
  for (int mask = 1; mask < 8; ++mask) {
    std::int64_t coef = 1;
    std::vector<int> us, ws;
    for (int i = 0; i < 3; ++i) {
      if (mask & (1 << i)) {
        coef *= a[i];
        us.push_back(i);
      } else {
        ws.push_back(i);
      }
    }
    if (coef == 0 || us.size() == 3) continue;
    // Sign of the permutation putting the u-slots first.
    int inversions = 0;
    for (int i : us) {
      for (int j : ws) inversions += j < i ? 1 : 0;
    }
    if (inversions % 2) coef = -coef;
    FqElt val;
    if (us.size() == 1) {
      val = local_symbol(w[ws[0]], w[ws[1]], prec);
    } else {
      val = local_symbol(minus_one, w[ws[0]], prec);
    }
    out = out * val.pow(coef);
  }
  return out;
}

}  // namespace oracle
