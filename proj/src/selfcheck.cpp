#include "tamecft/selfcheck.hpp"

#include <functional>
#include <sstream>

#include "tamecft/cft.hpp"

namespace tamecft {

namespace {

class Ledger {
 public:
  void check(std::string name, std::string expected, const std::function<std::string()>& actual) {
    Assertion a;
    a.name = std::move(name);
    a.expected = std::move(expected);
    try {
      a.actual = actual();
    } catch (const Error& e) {
      a.actual = std::string("error:") + errc_name(e.code());
    }
    a.pass = a.actual == a.expected;
    out.assertions.push_back(std::move(a));
  }
  SelfcheckResult out;
};

std::string join(const std::vector<FqElt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s;
}

std::string zetas(const CoverResult& c) {
  std::vector<FqElt> z;
  for (const auto& pv : c.table) z.push_back(pv.value.zeta);
  return join(z) + ";product=" + c.zeta_product.to_string();
}

std::string frobs(const CoverResult& c) {
  std::string s;
  for (std::size_t i = 0; i < c.table.size(); ++i) s += (i ? "," : "") + std::to_string(c.table[i].value.frob);
  return s + ";sum=" + std::to_string(c.frob_sum);
}

std::string val_lc_text(const Series& s) {
  const auto [v, lc] = s.val_lc();
  return "(" + std::to_string(v) + "," + lc.to_string() + ")";
}

}  // namespace

bool SelfcheckResult::pass() const { return failed() == 0; }

std::size_t SelfcheckResult::failed() const {
  std::size_t n = 0;
  for (const auto& a : assertions) n += a.pass ? 0 : 1;
  return n;
}

nlohmann::json SelfcheckResult::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& a : assertions) {
    list.push_back({{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"pass", a.pass}});
  }
  return {{"schema", 1},
          {"kind", "selfcheck"},
          {"assertions", list},
          {"summary", {{"total", assertions.size()}, {"failed", failed()}}},
          {"pass", pass()}};
}

std::string SelfcheckResult::to_text() const {
  std::ostringstream os;
  for (const auto& a : assertions) {
    os << (a.pass ? "ok    " : "FAIL  ") << a.name << ": " << a.actual;
    if (!a.pass) os << " (expected " << a.expected << ")";
    os << "\n";
  }
  os << assertions.size() - failed() << "/" << assertions.size() << " assertions passed\n";
  return os.str();
}

SelfcheckResult run_selfcheck(const Convention& conv) {
  Ledger L;
  const FieldSpec f5 = FieldSpec::make(5);
  const FieldSpec f7 = FieldSpec::make(7);
  const FieldSpec f9 = FieldSpec::make(3, 2);
  auto e5 = [&](std::int64_t v) { return f5.from_int(v); };

  // Finite fields.
  L.check("F5 mul(2,3)", "1", [&] { return (e5(2) * e5(3)).to_string(); });
  L.check("F9 w*w = -1", f9.from_int(2).to_string(), [&] {
    const FqElt w = f9.from_coeffs({0, 1});
    return (w * w).to_string();
  });
  L.check("F5 inv(4)", "4", [&] { return e5(4).inv().to_string(); });
  L.check("F5 dlog_2(4)", "2", [&] { return std::to_string(f5.dlog(e5(4), e5(2))); });
  L.check("F5 dlog_2(1)", "0", [&] { return std::to_string(f5.dlog(e5(1), e5(2))); });
  L.check("F7 dlog_3(6)", "3", [&] { return std::to_string(f7.dlog(f7.from_int(6), f7.from_int(3))); });
  L.check("F5 mu_4", "1,2,3,4", [&] { return join(f5.roots_of_unity(4)); });
  L.check("F5 mu_2", "1,4", [&] { return join(f5.roots_of_unity(2)); });
  L.check("F7 mu_3", "1,2,4", [&] { return join(f7.roots_of_unity(3)); });
  const FieldSpec f25 = extension_field(f5, 2);
  const Embedding& emb25 = register_embedding(f5, f25);
  L.check("N(delta), delta^2 = 2", "3", [&] {
    const FqElt delta = f25.nth_roots(emb25.map(e5(2)), 2).front();
    return norm(delta, f5).to_string();
  });
  L.check("N(3) = 3^2 for 3 in F5", "4", [&] { return norm(emb25.map(e5(3)), f5).to_string(); });
  L.check("N(1)", "1", [&] { return norm(f25.one(), f5).to_string(); });

  // Series.
  const auto sf = series_field(f5, 6);
  const Series s = Series::monomial(sf, f5.one(), 1);
  const Series one = Series::one(sf);
  L.check("inv(1-s)", "v=0; 1,1,1,1,1,1; prec=6", [&] { return format_series((one - s).inv()); });
  L.check("(s^-1 + 1) * s", "v=0; 1,1", [&] { return format_series((s.inv() + one) * s); });
  L.check("(1 + O(s^2)) + (4 + s + O(s^2))", "v=1; 1; prec=1", [&] {
    const Series a = Series::from_coeffs(sf, 0, {e5(1)}, 2);
    const Series b = Series::from_coeffs(sf, 0, {e5(4), e5(1)}, 2);
    return format_series(a + b);
  });
  L.check("val_lc(s^-1 + 1)", "(-1,1)", [&] { return val_lc_text(s.inv() + one); });
  L.check("val_lc(2s^2 + s^3)", "(2,2)", [&] {
    return val_lc_text(Series::from_coeffs(sf, 2, {e5(2), e5(1)}));
  });
  L.check("val_lc(0)", "error:AmbiguousZero", [&] { return val_lc_text(Series::zero(sf)); });
  L.check("nth_root(s^2, 2)", "v=1; 1", [&] { return format_series(nth_root(s * s, 2)); });
  L.check("nth_root(1+s, 2) leading terms", "1,3,3", [&] {
    const Series r = nth_root(one + s, 2);
    return r.coeff(0).to_string() + "," + r.coeff(1).to_string() + "," + r.coeff(2).to_string();
  });
  L.check("nth_root(2, 2)", "error:NotAnNthPower", [&] {
    return format_series(nth_root(Series::monomial(sf, e5(2), 0), 2));
  });

  // Node ring, F5, M=4.
  const RingConfig rc = RingConfig::make(f5, 4, 12);
  const NodeRing ring(rc);
  const std::string pstar = axis_shift_id(2, e5(2));
  const FactoredElement fx = FactoredElement::x(), fy = FactoredElement::y(), fu = FactoredElement::u();
  const FactoredElement fp = FactoredElement::prime(pstar);  // x - 2u^2
  const Place X = Place::axis(Axis::X), Y = Place::axis(Axis::Y), P = Place::prime(pstar);
  auto yes = [](bool b) { return std::string(b ? "true" : "false"); };

  L.check("certificate P(2,2) valid", "true", [&] { return yes(validate_certificate(rc, ring.prime(pstar)).ok); });
  L.check("tampered certificate rejected", "false", [&] {
    PrimeCertificate bad = ring.prime(pstar);
    bad.phi_y = Series::monomial(bad.phi_y.field(), e5(2), 2);
    return yes(validate_certificate(rc, bad).ok);
  });
  L.check("certificate Q2(2) valid, d=2", "true,2", [&] {
    const PrimeCertificate& q2 = ring.prime(quadratic_id(e5(2)));
    return yes(validate_certificate(rc, q2).ok) + "," + std::to_string(q2.d);
  });
  L.check("ord_X(x)", "4", [&] { return std::to_string(ord_at(ring, fx, X)); });
  L.check("ord_X(u)", "1", [&] { return std::to_string(ord_at(ring, fu, X)); });
  L.check("ord_Y(u)", "1", [&] { return std::to_string(ord_at(ring, fu, Y)); });
  L.check("ord_p*(x - 2u^2)", "1", [&] { return std::to_string(ord_at(ring, fp, P)); });
  L.check("ord_X(x - 2u^2)", "2", [&] { return std::to_string(ord_at(ring, fp, X)); });
  L.check("embed(x, X)", "u^4*[v=-1; 1]", [&] { return debug_string(embed_at_axis(ring, fx, Axis::X, 8)); });
  L.check("embed(x - 2u^2, X) valuation and residue", "2,v=0; 3", [&] {
    const auto e = embed_at_axis(ring, fp, Axis::X, 8);
    return std::to_string(e.valuation()) + "," + format_series(e.coeffs().front());
  });
  L.check("embed(y, X)", "u^0*[v=1; 1]", [&] { return debug_string(embed_at_axis(ring, fy, Axis::X, 8)); });
  L.check("restrict(u, p*)", "v=1; 1", [&] { return format_series(restrict_to_prime(ring, fu, pstar)); });
  L.check("restrict(x, p*)", "v=2; 2", [&] { return format_series(restrict_to_prime(ring, fx, pstar)); });
  L.check("restrict(1 + x, p*)", "v=0; 1,0,2", [&] {
    return format_series(restrict_to_prime(ring, FactoredElement::parse(ring, "unit[1 + x]"), pstar));
  });
  L.check("rewrite(xy, -1)", "u^4", [&] { return relation_rewrite(fx * fy, -1, 4).to_string(); });
  L.check("rewrite(u^4, +1)", "x^1 * y^1", [&] { return relation_rewrite(fu.pow(4), 1, 4).to_string(); });

  // Tame symbols.
  L.check("d{s,s}", "4", [&] { return tame_symbol_local(s, s, conv).to_string(); });
  L.check("d{2,s}", "2", [&] { return tame_symbol_local(Series::monomial(sf, e5(2), 0), s, conv).to_string(); });
  L.check("d{s,1-s}", "1", [&] { return tame_symbol_local(s, one - s, conv).to_string(); });
  L.check("d{s^-1,2s^2}", "2", [&] {
    return tame_symbol_local(s.inv(), Series::monomial(sf, e5(2), 2), conv).to_string();
  });
  L.check("d_p*{x - 2u^2, u}", "v=-1; 1", [&] { return format_series(tame_symbol_at_prime(ring, fp, fu, pstar, conv)); });
  L.check("d_p*{u, x - 2u^2}", "v=1; 1", [&] { return format_series(tame_symbol_at_prime(ring, fu, fp, pstar, conv)); });
  L.check("d_p*{u, x} disjoint", "v=0; 1", [&] { return format_series(tame_symbol_at_prime(ring, fu, fx, pstar, conv)); });
  L.check("invariant {x - 2u^2, u} at X", "(1,0,3)", [&] { return k2_axis_invariant(ring, fp, fu, Axis::X, conv).to_string(); });
  L.check("invariant {x - 2u^2, u} at Y", "(1,1,1)", [&] { return k2_axis_invariant(ring, fp, fu, Axis::Y, conv).to_string(); });
  const FactoredElement xi = FactoredElement::constant(e5(2));
  L.check("invariant {2, x} at X", "(3,0,1)", [&] { return k2_axis_invariant(ring, xi, fx, Axis::X, conv).to_string(); });
  L.check("triple {x - 2u^2, u, u} at X", "1", [&] { return triple_tame_axis(ring, fp, fu, fu, Axis::X, conv).to_string(); });
  L.check("triple {x - 2u^2, u, u} at Y", "4", [&] { return triple_tame_axis(ring, fp, fu, fu, Axis::Y, conv).to_string(); });
  L.check("triple {2, x, u} at X", "3", [&] { return triple_tame_axis(ring, xi, fx, fu, Axis::X, conv).to_string(); });
  L.check("triple {2, x, u} at Y", "2", [&] { return triple_tame_axis(ring, xi, fx, fu, Axis::Y, conv).to_string(); });

  // Kummer characters and covers.
  L.check("character of identity", "1,1,1,1", [&] {
    std::vector<FqElt> v;
    for (std::uint64_t r = 0; r < 4; ++r) v.push_back(kummer_character(f5, f5.one(), r, 4));
    return join(v);
  });
  L.check("character of sigma_2 over all roots", "2,2,2,2", [&] {
    std::vector<FqElt> v;
    for (std::uint64_t r = 0; r < 4; ++r) v.push_back(kummer_character(f5, e5(2), r, 4));
    return join(v);
  });
  L.check("cocycle sigma_2 sigma_3", "1", [&] {
    const FqElt c = kummer_character(f5, e5(2) * e5(3), 0, 4);
    return c == kummer_character(f5, e5(2), 0, 4) * kummer_character(f5, e5(3), 0, 4) ? c.to_string() : "mismatch";
  });
  L.check("same cover (x, y, 4)", "true", [&] { return yes(same_kummer_cover(ring, fx, fy, 4)); });
  L.check("same cover (x, yu, 4)", "false", [&] { return yes(same_kummer_cover(ring, fx, fy * fu, 4)); });
  L.check("same cover (x, x(1+u)^4, 4)", "true", [&] {
    return yes(same_kummer_cover(ring, fx, FactoredElement::parse(ring, "x * unit[1 + u]^4"), 4));
  });

  L.check("boundary {x - 2u^2, u}", "{P(2,2): v=-1; 1; X: (1,0,3); Y: (1,1,1)}", [&] {
    return boundary_map(ring, fp, fu, conv).to_string();
  });
  L.check("boundary {2, u}", "{X: (1,0,2); Y: (1,0,2)}", [&] { return boundary_map(ring, xi, fu, conv).to_string(); });
  L.check("boundary {xy, 1 - xy}", "{X: (1,0,1); Y: (1,0,1)}", [&] {
    return boundary_map(ring, fx * fy, FactoredElement::parse(ring, "unit[1 - x*y]"), conv).to_string();
  });

  const std::vector<CoverSpec> covers{CoverSpec::kummer_x(4), CoverSpec::kummer_y(4), CoverSpec::kummer_u(4),
                                      CoverSpec::unramified(4)};
  std::optional<ProductReport> ledger;
  try {
    ledger = product_formula(ring, fp, fu, covers, conv);
  } catch (const Error&) {
  }
  auto cover_at = [&](std::size_t i) -> const CoverResult& {
    if (!ledger) throw Error(Errc::PrecisionExhausted, "ledger product formula failed");
    return ledger->covers.at(i);
  };
  L.check("ledger x^(1/4) characters (p*, X, Y)", "2,2,4;product=1", [&] { return zetas(cover_at(0)); });
  L.check("ledger y^(1/4) characters (p*, X, Y)", "3,3,4;product=1", [&] { return zetas(cover_at(1)); });
  L.check("ledger u^(1/4) characters (p*, X, Y)", "4,1,4;product=1", [&] { return zetas(cover_at(2)); });
  L.check("ledger Frobenius degrees (p*, X, Y)", "-1,0,1;sum=0", [&] { return frobs(cover_at(3)); });
  L.check("ledger product formula", "true", [&] { return yes(ledger && ledger->pass); });

  L.check("{2, x} x^(1/4) characters (X, Y)", "1,1;product=1", [&] {
    return zetas(product_formula(ring, xi, fx, {CoverSpec::kummer_x(4)}, conv).covers.at(0));
  });
  L.check("{2, x} u^(1/4) characters (X, Y)", "2,3;product=1", [&] {
    return zetas(product_formula(ring, xi, fx, {CoverSpec::kummer_u(4)}, conv).covers.at(0));
  });
  L.check("{f, f} product formula", "true", [&] {
    const FactoredElement f = FactoredElement::parse(ring, "unit[2 + x + u*y]^-1 * x^2 * u * P(1,3) * Q2(2)^-1");
    return yes(product_formula(ring, f, f, covers, conv).pass);
  });
  L.check("{x - 2u^2, 3} u^(1/4) product formula", "true", [&] {
    return yes(product_formula(ring, fp, FactoredElement::constant(e5(3)), {CoverSpec::kummer_u(4)}, conv).pass);
  });
  L.check("constant-symbol axis patterns, F5, xi = 2", "true", [&] { return yes(constant_symbol_check(ring, e5(2), 4, conv).pass()); });
  L.check("G_4(4) structure and x/y cover equality", "true", [&] { return yes(level_group_model(ring, 4, 4).pass()); });

  return L.out;
}

}  // namespace tamecft
