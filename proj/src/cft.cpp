#include "tamecft/cft.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace tamecft {

namespace {

FqElt to_base(const FieldSpec& base, const FqElt& z) {
  if (z.field() == base) return z;
  const Embedding* emb = find_embedding(base, z.field());
  if (!emb) emb = &register_embedding(base, z.field());
  return emb->lift(z);
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Values the characters at one pair need, computed once per pair.
struct PairData {
  std::vector<std::string> primes;
  std::map<std::string, Series> symbols;
  AxisResidue res_f[2], res_g[2], res_u[2];
};

PairData prepare(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g, const Convention& conv,
                 bool need_u) {
  PairData d;
  d.primes = support_primes(ring, f, g);
  for (const auto& id : d.primes) d.symbols.emplace(id, tame_symbol_at_prime(ring, f, g, id, conv));
  const int prec = ring.precision();
  for (int i = 0; i < 2; ++i) {
    const Axis axis = i == 0 ? Axis::X : Axis::Y;
    d.res_f[i] = axis_residue(ring, f, axis, prec);
    d.res_g[i] = axis_residue(ring, g, axis, prec);
    if (need_u) d.res_u[i] = axis_residue(ring, FactoredElement::u(), axis, prec);
  }
  return d;
}

GaloisLevelN prime_value(const NodeRing& ring, const std::string& id, const Series& a, const CoverSpec& cover,
                         const Convention& conv) {
  const FieldSpec& base = ring.field();
  const PrimeCertificate& cert = ring.prime(id);
  if (cover.kind == CoverSpec::Kind::Unramified) {
    return {base.one(), static_cast<std::int64_t>(cert.d) * a.val_lc().first};
  }
  const Series h = restrict_to_prime(ring, cover.generator(), id);
  const FqElt sym = tame_symbol_local(a, h, conv);
  const std::uint64_t qd = cert.residue_field.q();
  return {to_base(base, sym.pow(static_cast<std::int64_t>((qd - 1) / cover.n))), 0};
}

GaloisLevelN axis_value(const NodeRing& ring, int axis_index, const PairData& d, const CoverSpec& cover,
                        const Convention& conv) {
  const FieldSpec& base = ring.field();
  const AxisResidue& rf = d.res_f[axis_index];
  const AxisResidue& rg = d.res_g[axis_index];
  const Series c = axis_boundary(rf, rg, conv);
  if (cover.kind == CoverSpec::Kind::Unramified) return {base.one(), c.val_lc().first};
  const std::int64_t e = static_cast<std::int64_t>((base.q() - 1) / cover.n);
  // chi_y through the residue coordinate, +1 at X and -1 at Y.
  const Series t = Series::monomial(c.field(), base.one(), 1);
  bool at_x = axis_index == 0;
  if (conv.flip_axis_orientation) at_x = !at_x;
  const FqElt chi_y = tame_symbol_local(c, t, conv).pow(at_x ? e : -e);
  FqElt zeta = chi_y.pow(cover.beta - cover.alpha);
  if (cover.gamma != 0) {
    const FqElt chi_u = triple_tame_axis(rf, rg, d.res_u[axis_index], conv).pow(-e);
    zeta *= chi_u.pow(cover.gamma);
  }
  return {zeta, 0};
}

}  // namespace

// ---------------------------------------------------------------------------
// CoverSpec

CoverSpec CoverSpec::kummer(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::uint64_t n) {
  CoverSpec c;
  c.kind = Kind::Kummer;
  c.alpha = alpha;
  c.beta = beta;
  c.gamma = gamma;
  c.n = n;
  return c;
}

CoverSpec CoverSpec::unramified(std::int64_t d_frob) {
  CoverSpec c;
  c.kind = Kind::Unramified;
  c.d_frob = d_frob;
  return c;
}

bool CoverSpec::experimental() const {
  return kind == Kind::Kummer && n > 0 && gamma % static_cast<std::int64_t>(n) != 0;
}

FactoredElement CoverSpec::generator() const {
  FactoredElement h = FactoredElement::monomial(alpha, beta, gamma);
  if (nth_power_unit) h = h * FactoredElement::unit(*nth_power_unit, static_cast<std::int64_t>(n));
  return h;
}

void CoverSpec::validate(const RingConfig& cfg) const {
  if (kind == Kind::Unramified) {
    if (d_frob < 1) throw Error(Errc::InvalidConfig, "d_frob must be >= 1");
    return;
  }
  if (n == 0 || (cfg.field.q() - 1) % n != 0) throw Error(Errc::TamenessViolated, "n must divide q-1");
  if (static_cast<std::uint64_t>(cfg.M) % n != 0) throw Error(Errc::TamenessViolated, "n must divide M");
}

std::string CoverSpec::to_string() const {
  if (kind == Kind::Unramified) return "unramified(" + std::to_string(d_frob) + ")";
  std::string gen;
  auto add = [&](const char* var, std::int64_t k) {
    if (k == 0) return;
    if (!gen.empty()) gen += "*";
    gen += var;
    if (k != 1) gen += "^" + std::to_string(k);
  };
  add("x", alpha);
  add("y", beta);
  add("u", gamma);
  if (nth_power_unit) gen += (gen.empty() ? "" : "*") + std::string("unit[") + nth_power_unit->to_string() + "]^" + std::to_string(n);
  if (gen.empty()) gen = "1";
  const bool simple = gen.find('*') == std::string::npos && gen.find('^') == std::string::npos;
  return (simple ? gen : "(" + gen + ")") + "^(1/" + std::to_string(n) + ")";
}

std::string GaloisLevelN::to_string() const { return "(" + zeta.to_string() + "," + std::to_string(frob) + ")"; }

// ---------------------------------------------------------------------------

FqElt kummer_character(const FieldSpec& f, const FqElt& zeta, std::uint64_t r, std::uint64_t n) {
  if (n == 0 || (f.q() - 1) % n != 0) throw Error(Errc::TamenessViolated, "n must divide q-1");
  if (!zeta.pow(static_cast<std::int64_t>(n)).is_one()) throw Error(Errc::TamenessViolated, "zeta is not in mu_n");
  if (r >= n) throw Error(Errc::InvalidConfig, "root index out of range");
  const FqElt omega = f.primitive_element().pow(static_cast<std::int64_t>((f.q() - 1) / n));
  // The root omega^r t^{1/n} is carried as its coefficient in front of t^{1/n}.
  const FqElt root = omega.pow(static_cast<std::int64_t>(r));
  const FqElt image = root * zeta;
  return image / root;
}

bool is_nth_power(const NodeRing& ring, const FactoredElement& h, std::uint64_t n) {
  const std::int64_t sn = static_cast<std::int64_t>(n);
  if (sn <= 0) throw Error(Errc::TamenessViolated, "n must be positive");
  for (const auto& [id, k] : h.prime_exps()) {
    if (k % sn != 0) return false;
  }
  // x^ex y^ey u^eu = (x^a y^b u^c)^n up to relation_rewrite by some k.
  const std::int64_t M = ring.M();
  bool monomial_ok = false;
  for (std::int64_t k = 0; k < sn && !monomial_ok; ++k) {
    monomial_ok = mod_floor(h.ex() + k, sn) == 0 && mod_floor(h.ey() + k, sn) == 0 && mod_floor(h.eu() - k * M, sn) == 0;
  }
  if (!monomial_ok) return false;
  FqElt c = ring.field().one();
  for (const auto& uf : h.units()) c *= uf.poly.constant_term().pow(uf.exp);
  return ring.field().is_nth_power(c, n);
}

bool same_kummer_cover(const NodeRing& ring, const FactoredElement& h1, const FactoredElement& h2, std::uint64_t n) {
  return is_nth_power(ring, h1 * h2.inverse(), n) || is_nth_power(ring, h1 * h2, n);
}

std::vector<std::string> support_primes(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g) {
  std::set<std::string> ids;
  for (const auto& [id, k] : f.prime_exps()) ids.insert(id);
  for (const auto& [id, k] : g.prime_exps()) ids.insert(id);
  std::vector<std::string> out;
  for (const auto& id : ring.prime_ids()) {
    if (ids.count(id)) out.push_back(id);
  }
  for (const auto& id : ids) ring.prime(id);
  return out;
}

GaloisLevelN local_character(const NodeRing& ring, const Place& place, const FactoredElement& f,
                             const FactoredElement& g, const CoverSpec& cover, const Convention& conv) {
  cover.validate(ring.config());
  if (place.kind == Place::Kind::Prime) {
    return prime_value(ring, place.prime_id, tame_symbol_at_prime(ring, f, g, place.prime_id, conv), cover, conv);
  }
  const int i = place.kind == Place::Kind::AxisX ? 0 : 1;
  PairData d;
  const Axis axis = place.axis_value();
  d.res_f[i] = axis_residue(ring, f, axis, ring.precision());
  d.res_g[i] = axis_residue(ring, g, axis, ring.precision());
  d.res_u[i] = axis_residue(ring, FactoredElement::u(), axis, ring.precision());
  return axis_value(ring, i, d, cover, conv);
}

std::string BoundaryData::to_string() const {
  std::string out = "{";
  for (const auto& [id, s] : primes) out += id + ": " + format_series(s) + "; ";
  out += "X: " + x_axis.to_string() + "; Y: " + y_axis.to_string() + "}";
  return out;
}

BoundaryData boundary_map(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                          const Convention& conv) {
  BoundaryData out;
  for (const auto& id : support_primes(ring, f, g)) out.primes.emplace(id, tame_symbol_at_prime(ring, f, g, id, conv));
  out.x_axis = k2_axis_invariant(ring, f, g, Axis::X, conv);
  out.y_axis = k2_axis_invariant(ring, f, g, Axis::Y, conv);
  return out;
}

ProductReport product_formula(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                              const std::vector<CoverSpec>& covers, const Convention& conv) {
  bool need_u = false;
  for (const auto& c : covers) {
    c.validate(ring.config());
    need_u = need_u || (c.kind == CoverSpec::Kind::Kummer && c.gamma != 0);
  }
  const PairData d = prepare(ring, f, g, conv, need_u);
  ProductReport report;
  for (const auto& cover : covers) {
    CoverResult r;
    r.cover = cover;
    r.zeta_product = ring.field().one();
    for (const auto& id : d.primes) {
      r.table.push_back({Place::prime(id), prime_value(ring, id, d.symbols.at(id), cover, conv)});
    }
    r.table.push_back({Place::axis(Axis::X), axis_value(ring, 0, d, cover, conv)});
    r.table.push_back({Place::axis(Axis::Y), axis_value(ring, 1, d, cover, conv)});
    for (const auto& pv : r.table) {
      r.zeta_product *= pv.value.zeta;
      r.frob_sum += pv.value.frob;
    }
    const std::int64_t dmod = cover.kind == CoverSpec::Kind::Unramified ? cover.d_frob : 1;
    r.pass = r.zeta_product.is_one() && mod_floor(r.frob_sum, dmod) == 0;
    report.pass = report.pass && r.pass;
    report.covers.push_back(std::move(r));
  }
  return report;
}

// ---------------------------------------------------------------------------

void CheckReport::add(std::string name, bool pass, std::string detail) {
  items.push_back({std::move(name), pass, std::move(detail)});
}

bool CheckReport::pass() const {
  for (const auto& i : items) {
    if (!i.pass) return false;
  }
  return true;
}

CheckReport constant_symbol_check(const NodeRing& ring, const FqElt& xi, std::uint64_t n, const Convention& conv) {
  const FieldSpec& f = ring.field();
  if (!f.is_generator(xi)) throw Error(Errc::NotAGenerator, xi.to_string());
  if (n == 0 || static_cast<std::uint64_t>(ring.M()) % n != 0) throw Error(Errc::TamenessViolated, "n must divide M");
  CheckReport rep;
  const FactoredElement e_xi = FactoredElement::constant(xi);
  const FqElt xi_inv = xi.inv();
  const FqElt xi_m = xi.pow(ring.M());
  const FqElt one = f.one();
  auto check = [&](const std::string& name, const FactoredElement& g, const LocalInvariant& want_x,
                   const LocalInvariant& want_y) {
    const BoundaryData b = boundary_map(ring, e_xi, g, conv);
    const bool ok = b.primes.empty() && b.x_axis == want_x && b.y_axis == want_y;
    const LevelInvariant lx = reduce_to_level(b.x_axis, n);
    const LevelInvariant ly = reduce_to_level(b.y_axis, n);
    rep.add(name, ok,
            "X: " + b.x_axis.to_string() + " Y: " + b.y_axis.to_string() + " level " + std::to_string(n) + " X: (" +
                lx.rho.to_string() + "," + std::to_string(lx.b) + "," + lx.lambda.to_string() + ") Y: (" +
                ly.rho.to_string() + "," + std::to_string(ly.b) + "," + ly.lambda.to_string() + ")");
  };
  check("{xi,x} anti-diagonal", FactoredElement::x(), {xi_inv, 0, xi_m}, {xi, 0, one});
  check("{xi,y} mirror", FactoredElement::y(), {xi, 0, one}, {xi_inv, 0, xi_m});
  check("{xi,u} lambda-diagonal", FactoredElement::u(), {one, 0, xi}, {one, 0, xi});
  check("{xi,xy}", FactoredElement::monomial(1, 1, 0), {one, 0, xi_m}, {one, 0, xi_m});

  const CoverSpec ucov = CoverSpec::kummer_u(n);
  const GaloisLevelN ux = local_character(ring, Place::axis(Axis::X), e_xi, FactoredElement::x(), ucov, conv);
  const GaloisLevelN uy = local_character(ring, Place::axis(Axis::Y), e_xi, FactoredElement::x(), ucov, conv);
  rep.add("u-cover characters of {xi,x} cancel", (ux.zeta * uy.zeta).is_one(),
          "X: " + ux.zeta.to_string() + " Y: " + uy.zeta.to_string());
  // Images of the four symbols under the X-component of the u-character.
  std::set<std::uint32_t> generated{one.index()};
  std::vector<FqElt> gens;
  for (const auto& g : {FactoredElement::x(), FactoredElement::y(), FactoredElement::u(), FactoredElement::monomial(1, 1, 0)}) {
    gens.push_back(local_character(ring, Place::axis(Axis::X), e_xi, g, ucov, conv).zeta);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto idx : std::vector<std::uint32_t>(generated.begin(), generated.end())) {
      for (const auto& g : gens) grew = generated.insert((f.element(idx) * g).index()).second || grew;
    }
  }
  rep.add("image is cyclic of order n", generated.size() == n,
          "order " + std::to_string(generated.size()) + ", n = " + std::to_string(n));
  return rep;
}

CheckReport level_group_model(const NodeRing& ring, std::uint64_t n, std::int64_t d_frob) {
  const FieldSpec& f = ring.field();
  if (n == 0 || (f.q() - 1) % n != 0 || static_cast<std::uint64_t>(ring.M()) % n != 0) {
    throw Error(Errc::TamenessViolated, "n must divide gcd(M, q-1)");
  }
  if (d_frob < 1) throw Error(Errc::InvalidConfig, "d_frob must be >= 1");
  CheckReport rep;
  const auto mu = f.roots_of_unity(n);
  struct G {
    FqElt z;
    std::int64_t k;
  };
  std::vector<G> elems;
  for (const auto& z : mu) {
    for (std::int64_t k = 0; k < d_frob; ++k) elems.push_back({z, k});
  }
  auto key = [&](const G& g) { return static_cast<std::uint64_t>(g.z.index()) * static_cast<std::uint64_t>(d_frob) + static_cast<std::uint64_t>(g.k); };
  std::set<std::uint64_t> all;
  for (const auto& g : elems) all.insert(key(g));
  rep.add("|G| = n * d", all.size() == n * static_cast<std::uint64_t>(d_frob), std::to_string(all.size()));

  bool closed = true, assoc_inv = true;
  for (const auto& a : elems) {
    bool has_inv = false;
    for (const auto& b : elems) {
      const G c{a.z * b.z, mod_floor(a.k + b.k, d_frob)};
      closed = closed && all.count(key(c));
      if (c.z.is_one() && c.k == 0) has_inv = true;
    }
    assoc_inv = assoc_inv && has_inv;
  }
  rep.add("componentwise group law", closed && assoc_inv);

  std::set<std::uint64_t> kernel, image;
  for (const auto& g : elems) {
    image.insert(static_cast<std::uint64_t>(g.k));
    if (g.k == 0) kernel.insert(g.z.index());
  }
  bool kernel_is_mu = kernel.size() == n;
  for (const auto& z : mu) kernel_is_mu = kernel_is_mu && kernel.count(z.index());
  rep.add("kernel of G -> Z/d is mu_n", kernel_is_mu);
  rep.add("G -> Z/d is onto", image.size() == static_cast<std::size_t>(d_frob));

  rep.add("same_kummer_cover(x, y)", same_kummer_cover(ring, FactoredElement::x(), FactoredElement::y(), n));

  int ramified = 0, unramified = 0;
  bool predicted = true;
  std::string detail;
  for (const auto& id : ring.prime_ids()) {
    const PrimeCertificate& cert = ring.prime(id);
    if (cert.family == PrimeFamily::Custom) continue;
    const Series rx = restrict_to_prime(ring, FactoredElement::x(), id);
    const auto [v, lc] = rx.val_lc();
    const std::int64_t want_v = cert.family_exponent;
    const bool divisible = v % static_cast<std::int64_t>(n) == 0;
    bool root_ok = true;
    try {
      nth_root(rx * Series::monomial(rx.field(), lc.inv(), 0), n);
    } catch (const Error& e) {
      if (e.code() != Errc::NotAnNthPower) throw;
      root_ok = false;
    }
    if (v != want_v || root_ok != divisible) {
      predicted = false;
      detail += id + " v_s=" + std::to_string(v) + " ";
    }
    (divisible ? unramified : ramified) += 1;
  }
  rep.add("x-cover residual behaviour at built-in primes matches bookkeeping", predicted,
          detail.empty() ? std::to_string(unramified) + " unramified, " + std::to_string(ramified) + " residually ramified"
                         : detail);
  return rep;
}

}  // namespace tamecft
