#include "tamecft/ring_node.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace tamecft {

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string remove_spaces(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

std::int64_t parse_i64(const std::string& t, std::string_view context) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw Error(Errc::Parse, "bad integer '" + t + "' in '" + std::string(context) + "'");
  }
  if (pos != t.size()) throw Error(Errc::Parse, "bad integer '" + t + "' in '" + std::string(context) + "'");
  return v;
}

// Splits on `sep` outside (), [].
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string coeff_text(const FqElt& c) {
  if (c.field().is_prime_field()) return c.to_string();
  return "(" + c.to_string() + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// TriPoly

void TriPoly::add_term(const Exps& e, const FqElt& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TriPoly TriPoly::constant(const FqElt& c) { return monomial(c, 0, 0, 0); }

TriPoly TriPoly::monomial(const FqElt& c, int eu, int ex, int ey) {
  if (eu < 0 || ex < 0 || ey < 0) throw Error(Errc::Parse, "negative exponent in polynomial");
  TriPoly p(c.field());
  p.add_term({eu, ex, ey}, c);
  return p;
}

FqElt TriPoly::constant_term() const {
  auto it = terms_.find({0, 0, 0});
  return it == terms_.end() ? field_.zero() : it->second;
}

TriPoly TriPoly::operator+(const TriPoly& b) const {
  if (field_ != b.field_) throw Error(Errc::SpecMismatch, "polynomials over different fields");
  TriPoly r = *this;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

TriPoly TriPoly::operator-(const TriPoly& b) const {
  if (field_ != b.field_) throw Error(Errc::SpecMismatch, "polynomials over different fields");
  TriPoly r = *this;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

TriPoly TriPoly::operator*(const TriPoly& b) const {
  if (field_ != b.field_) throw Error(Errc::SpecMismatch, "polynomials over different fields");
  TriPoly r(field_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  }
  return r;
}

std::string TriPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  static const char* names[3] = {"u", "x", "y"};
  for (const auto& [e, c] : terms_) {
    std::vector<std::string> factors;
    const bool is_const = e[0] == 0 && e[1] == 0 && e[2] == 0;
    if (!c.is_one() || is_const) factors.push_back(coeff_text(c));
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      factors.push_back(e[i] == 1 ? names[i] : std::string(names[i]) + "^" + std::to_string(e[i]));
    }
    std::string term;
    for (std::size_t i = 0; i < factors.size(); ++i) term += (i ? "*" : "") + factors[i];
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

bool operator<(const TriPoly& a, const TriPoly& b) { return a.to_string() < b.to_string(); }

TriPoly TriPoly::parse(const FieldSpec& f, std::string_view text) {
  const std::string s = remove_spaces(text);
  if (s.empty()) throw Error(Errc::Parse, "empty polynomial");
  // Split into signed terms at top-level + and -.
  std::vector<std::pair<bool, std::string>> terms;
  std::string cur;
  bool negative = false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == '+' || ch == '-') && depth == 0 && !(i > 0 && s[i - 1] == '^')) {
      if (!cur.empty()) terms.emplace_back(negative, cur);
      else if (i != 0) throw Error(Errc::Parse, "dangling sign in '" + s + "'");
      cur.clear();
      negative = ch == '-';
      continue;
    }
    cur.push_back(ch);
  }
  if (cur.empty()) throw Error(Errc::Parse, "trailing sign in '" + s + "'");
  terms.emplace_back(negative, cur);

  TriPoly out(f);
  for (const auto& [neg, term] : terms) {
    FqElt coeff = f.one();
    Exps e{0, 0, 0};
    for (const auto& factor : split_top(term, '*')) {
      if (factor.empty()) throw Error(Errc::Parse, "empty factor in '" + s + "'");
      const char head = factor[0];
      if (head == 'u' || head == 'x' || head == 'y') {
        int k = 1;
        if (factor.size() > 1) {
          if (factor[1] != '^') throw Error(Errc::Parse, "bad factor '" + factor + "'");
          k = static_cast<int>(parse_i64(factor.substr(2), s));
          if (k < 0) throw Error(Errc::Parse, "negative exponent in polynomial '" + s + "'");
        }
        e[head == 'u' ? 0 : head == 'x' ? 1 : 2] += k;
      } else {
        coeff *= f.parse_element(factor);
      }
    }
    out.add_term(e, neg ? -coeff : coeff);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string Place::to_string() const {
  switch (kind) {
    case Kind::AxisX: return "X";
    case Kind::AxisY: return "Y";
    case Kind::Prime: return prime_id;
  }
  return "?";
}

RingConfig RingConfig::make(const FieldSpec& field, int M, int precision, std::optional<FqElt> generator) {
  if (M < 1) throw Error(Errc::InvalidConfig, "M must be >= 1");
  if ((field.q() - 1) % static_cast<std::uint32_t>(M) != 0) {
    throw Error(Errc::TamenessViolated, "M=" + std::to_string(M) + " does not divide q-1=" + std::to_string(field.q() - 1));
  }
  if (precision < 2) throw Error(Errc::InvalidConfig, "precision must be >= 2");
  RingConfig cfg;
  cfg.field = field;
  cfg.M = M;
  cfg.precision = precision;
  cfg.generator = generator ? *generator : field.primitive_element();
  if (!field.is_generator(cfg.generator)) throw Error(Errc::NotAGenerator, "configured generator");
  return cfg;
}

// ---------------------------------------------------------------------------
// Certificates

std::string axis_shift_id(int a, const FqElt& c) { return "P(" + std::to_string(a) + "," + coeff_text(c) + ")"; }
std::string quadratic_id(const FqElt& gamma) { return "Q2(" + coeff_text(gamma) + ")"; }

PrimeCertificate axis_shift_prime(const RingConfig& cfg, int a, const FqElt& c) {
  if (a <= 0 || a >= cfg.M) throw Error(Errc::CertificateInvalid, "P(a,c) needs 0 < a < M");
  if (c.is_zero() || c.field() != cfg.field) throw Error(Errc::CertificateInvalid, "P(a,c) needs c in F_q^x");
  PrimeCertificate cert;
  cert.id = axis_shift_id(a, c);
  cert.d = 1;
  cert.residue_field = cfg.field;
  const auto sf = series_field(cfg.field, cfg.precision);
  cert.phi_u = Series::monomial(sf, cfg.field.one(), 1);
  cert.phi_x = Series::monomial(sf, c, a);
  cert.phi_y = Series::monomial(sf, c.inv(), cfg.M - a);
  cert.defining = TriPoly::monomial(cfg.field.one(), 0, 1, 0) - TriPoly::monomial(c, a, 0, 0);
  cert.axis_mults = {a, 0};
  cert.family = PrimeFamily::AxisShift;
  cert.family_exponent = a;
  return cert;
}

PrimeCertificate quadratic_prime(const RingConfig& cfg, const FqElt& gamma) {
  const FieldSpec& f = cfg.field;
  if (cfg.M % 2 != 0) throw Error(Errc::CertificateInvalid, "Q2 primes need M even");
  if (f.p() == 2) throw Error(Errc::CertificateInvalid, "Q2 primes need odd characteristic");
  if (gamma.is_zero() || f.is_nth_power(gamma, 2)) throw Error(Errc::CertificateInvalid, "Q2 needs a non-square gamma");
  const FieldSpec big = extension_field(f, 2);
  const Embedding& emb = register_embedding(f, big);
  const auto roots = big.nth_roots(emb.map(gamma), 2);
  if (roots.empty()) throw Error(Errc::CertificateInvalid, "gamma has no square root in F_{q^2}");
  const FqElt delta = roots.front();
  const int k = cfg.M / 2;
  PrimeCertificate cert;
  cert.id = quadratic_id(gamma);
  cert.d = 2;
  cert.residue_field = big;
  const auto sf = series_field(big, cfg.precision);
  cert.phi_u = Series::monomial(sf, big.one(), 1);
  cert.phi_x = Series::monomial(sf, delta, k);
  cert.phi_y = Series::monomial(sf, delta.inv(), k);
  cert.defining = TriPoly::monomial(f.one(), 0, 1, 0) - TriPoly::monomial(gamma, 0, 0, 1);
  cert.axis_mults = {0, 0};
  cert.family = PrimeFamily::Quadratic;
  cert.family_exponent = k;
  return cert;
}

Series eval_poly(const TriPoly& p, const PrimeCertificate& cert) {
  const auto& sf = cert.phi_u.field();
  const FieldSpec big = cert.residue_field;
  const Embedding* emb = nullptr;
  if (p.field() != big) {
    emb = find_embedding(p.field(), big);
    if (!emb) emb = &register_embedding(p.field(), big);
  }
  Series acc = Series::zero(sf);
  for (const auto& [e, c] : p.terms()) {
    const FqElt cc = emb ? emb->map(c) : c;
    Series term = Series::monomial(sf, cc, 0);
    if (e[0]) term *= cert.phi_u.pow(e[0]);
    if (e[1]) term *= cert.phi_x.pow(e[1]);
    if (e[2]) term *= cert.phi_y.pow(e[2]);
    acc += term;
  }
  return acc;
}

SeriesOverSeries embed_poly_at_axis(const NodeRing& ring, const TriPoly& p, Axis axis, int prec) {
  const FieldSpec& f = ring.field();
  const int M = ring.M();
  const auto outer = nested_field(f, prec);
  const auto inner = outer.coeff;
  std::map<int, Series> by_u;
  for (const auto& [e, c] : p.terms()) {
    // X: x -> u^M y^{-1}; Y: y -> u^M x^{-1}. Inner variable is the other axis coordinate.
    const int eu = e[0], ex = e[1], ey = e[2];
    const int outer_exp = axis == Axis::X ? eu + M * ex : eu + M * ey;
    const int inner_exp = axis == Axis::X ? ey - ex : ex - ey;
    auto it = by_u.find(outer_exp);
    const Series term = Series::monomial(inner, c, inner_exp);
    if (it == by_u.end()) by_u.emplace(outer_exp, term);
    else it->second += term;
  }
  if (by_u.empty()) return SeriesOverSeries::zero(outer);
  const int lo = by_u.begin()->first;
  const int hi = by_u.rbegin()->first;
  std::vector<Series> coeffs(static_cast<std::size_t>(hi - lo + 1), Series::zero(inner));
  for (auto& [k, v] : by_u) coeffs[static_cast<std::size_t>(k - lo)] = v;
  return SeriesOverSeries::from_coeffs(outer, lo, std::move(coeffs));
}

CertificateCheck validate_certificate(const RingConfig& cfg, const PrimeCertificate& cert) {
  CertificateCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.diagnostics.push_back(std::move(msg));
  };
  if (cert.d < 1) fail("residue degree d must be >= 1");
  if (cert.residue_field.data() == nullptr) {
    fail("missing residue field");
    return out;
  }
  if (cert.residue_field.p() != cfg.field.p() || cert.residue_field.e() != cfg.field.e() * static_cast<std::uint32_t>(cert.d)) {
    fail("residue field is not F_{q^d}");
    return out;
  }
  for (const auto* s : {&cert.phi_u, &cert.phi_x, &cert.phi_y}) {
    if (s->field().coeff != cert.residue_field) {
      fail("parametrization not over the residue field");
      return out;
    }
  }
  if (!cert.phi_u.is_nonzero() || cert.phi_u.valuation() < 1) fail("v_s(phi_u) must be >= 1");
  if (!cert.phi_x.is_nonzero() || cert.phi_x.valuation() < 1) fail("v_s(phi_x) must be >= 1");
  if (!cert.phi_y.is_nonzero() || cert.phi_y.valuation() < 1) fail("v_s(phi_y) must be >= 1");
  if (!out.ok) return out;
  const Series lhs = cert.phi_x * cert.phi_y;
  const Series rhs = cert.phi_u.pow(cfg.M);
  if (!agrees(lhs, rhs)) fail("phi_x * phi_y != phi_u^M: " + format_series(lhs) + " vs " + format_series(rhs));
  if (cert.defining.field() != cfg.field) {
    fail("defining element not over F_q");
    return out;
  }
  if (cert.defining.constant_term() != cfg.field.zero()) fail("defining element is a unit of R");
  if (find_embedding(cfg.field, cert.residue_field) == nullptr && cert.d > 1) {
    register_embedding(cfg.field, cert.residue_field);
  }
  const Series at_phi = eval_poly(cert.defining, cert);
  if (at_phi.is_nonzero()) fail("phi(defining) != 0: " + format_series(at_phi));
  NodeRing bare(cfg, false);
  for (Axis axis : {Axis::X, Axis::Y}) {
    const auto emb = embed_poly_at_axis(bare, cert.defining, axis, cfg.precision);
    const int want = cert.axis_mults[axis == Axis::X ? 0 : 1];
    if (!emb.is_nonzero() || emb.valuation() != want) {
      fail(std::string("axis multiplicity mismatch at ") + (axis == Axis::X ? "X" : "Y"));
    }
  }
  return out;
}

std::string certificate_to_json(const PrimeCertificate& cert) {
  nlohmann::json j;
  j["id"] = cert.id;
  j["d"] = cert.d;
  j["phi_u"] = format_series(cert.phi_u);
  j["phi_x"] = format_series(cert.phi_x);
  j["phi_y"] = format_series(cert.phi_y);
  j["defining"] = cert.defining.to_string();
  j["axis_mults"] = {cert.axis_mults[0], cert.axis_mults[1]};
  return j.dump();
}

PrimeCertificate certificate_from_json(const RingConfig& cfg, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::Parse, std::string("certificate json: ") + e.what());
  }
  PrimeCertificate cert;
  try {
    cert.id = j.at("id").get<std::string>();
    cert.d = j.at("d").get<int>();
    cert.residue_field = extension_field(cfg.field, static_cast<std::uint32_t>(cert.d));
    cert.phi_u = parse_series(cert.residue_field, j.at("phi_u").get<std::string>(), cfg.precision);
    cert.phi_x = parse_series(cert.residue_field, j.at("phi_x").get<std::string>(), cfg.precision);
    cert.phi_y = parse_series(cert.residue_field, j.at("phi_y").get<std::string>(), cfg.precision);
    cert.defining = TriPoly::parse(cfg.field, j.at("defining").get<std::string>());
    const auto mults = j.at("axis_mults");
    cert.axis_mults = {mults.at(0).get<int>(), mults.at(1).get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("certificate json: ") + e.what());
  }
  cert.family = PrimeFamily::Custom;
  return cert;
}

// ---------------------------------------------------------------------------
// NodeRing

NodeRing::NodeRing(RingConfig cfg, bool with_builtins, const std::vector<PrimeCertificate>& extra)
    : cfg_(std::move(cfg)) {
  if (with_builtins) {
    const FieldSpec& f = cfg_.field;
    for (int a = 1; a < cfg_.M; ++a) {
      for (std::uint32_t i = 1; i < f.q(); ++i) add(axis_shift_prime(cfg_, a, f.element(i)));
    }
    if (cfg_.M % 2 == 0 && f.p() != 2) {
      for (std::uint32_t i = 1; i < f.q(); ++i) {
        const FqElt g = f.element(i);
        if (!f.is_nth_power(g, 2)) add(quadratic_prime(cfg_, g));
      }
    }
  }
  for (const auto& cert : extra) {
    const auto check = validate_certificate(cfg_, cert);
    if (!check.ok) {
      std::string msg = cert.id + ":";
      for (const auto& d : check.diagnostics) msg += " " + d + ";";
      throw Error(Errc::CertificateInvalid, msg);
    }
    add(cert);
  }
}

void NodeRing::add(PrimeCertificate cert) {
  if (primes_.count(cert.id)) throw Error(Errc::CertificateInvalid, "duplicate prime id " + cert.id);
  ids_.push_back(cert.id);
  if (cert.family == PrimeFamily::AxisShift) axis_shift_ids_.push_back(cert.id);
  if (cert.family == PrimeFamily::Quadratic) quadratic_ids_.push_back(cert.id);
  primes_.emplace(cert.id, std::move(cert));
}

const PrimeCertificate& NodeRing::prime(const std::string& id) const {
  auto it = primes_.find(id);
  if (it == primes_.end()) throw Error(Errc::UnknownPrime, id);
  return it->second;
}

// ---------------------------------------------------------------------------
// FactoredElement

FactoredElement FactoredElement::unit(const TriPoly& poly, std::int64_t exp) {
  if (poly.constant_term().is_zero()) {
    throw Error(Errc::NotAUnit, "unit factor needs a nonzero constant term: " + poly.to_string());
  }
  FactoredElement f;
  f.units_.push_back({poly, exp});
  f.normalize();
  return f;
}

FactoredElement FactoredElement::constant(const FqElt& c) { return unit(TriPoly::constant(c)); }

FactoredElement FactoredElement::monomial(std::int64_t ex, std::int64_t ey, std::int64_t eu) {
  FactoredElement f;
  f.ex_ = ex;
  f.ey_ = ey;
  f.eu_ = eu;
  return f;
}

FactoredElement FactoredElement::prime(const std::string& id, std::int64_t k) {
  FactoredElement f;
  if (k != 0) f.primes_[id] = k;
  return f;
}

std::int64_t FactoredElement::prime_exp(const std::string& id) const {
  auto it = primes_.find(id);
  return it == primes_.end() ? 0 : it->second;
}

void FactoredElement::normalize() {
  std::vector<UnitFactor> merged;
  for (auto& uf : units_) {
    if (uf.exp == 0) continue;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const UnitFactor& m) { return m.poly == uf.poly; });
    if (it == merged.end()) merged.push_back(uf);
    else it->exp += uf.exp;
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const UnitFactor& m) {
                                return m.exp == 0 || m.poly == TriPoly::constant(m.poly.field().one());
                              }),
               merged.end());
  std::sort(merged.begin(), merged.end(), [](const UnitFactor& a, const UnitFactor& b) { return a.poly < b.poly; });
  units_ = std::move(merged);
  for (auto it = primes_.begin(); it != primes_.end();) {
    if (it->second == 0) it = primes_.erase(it);
    else ++it;
  }
}

FactoredElement FactoredElement::operator*(const FactoredElement& b) const {
  FactoredElement r = *this;
  r.units_.insert(r.units_.end(), b.units_.begin(), b.units_.end());
  r.ex_ += b.ex_;
  r.ey_ += b.ey_;
  r.eu_ += b.eu_;
  for (const auto& [id, k] : b.primes_) r.primes_[id] += k;
  r.normalize();
  return r;
}

FactoredElement FactoredElement::pow(std::int64_t k) const {
  FactoredElement r = *this;
  for (auto& uf : r.units_) uf.exp *= k;
  r.ex_ *= k;
  r.ey_ *= k;
  r.eu_ *= k;
  for (auto& [id, e] : r.primes_) e *= k;
  r.normalize();
  return r;
}

std::string FactoredElement::to_string() const {
  std::vector<std::string> parts;
  for (const auto& uf : units_) {
    std::string s = "unit[" + uf.poly.to_string() + "]";
    if (uf.exp != 1) s += "^" + std::to_string(uf.exp);
    parts.push_back(s);
  }
  if (ex_) parts.push_back("x^" + std::to_string(ex_));
  if (ey_) parts.push_back("y^" + std::to_string(ey_));
  if (eu_) parts.push_back("u^" + std::to_string(eu_));
  for (const auto& [id, k] : primes_) parts.push_back(id + "^" + std::to_string(k));
  if (parts.empty()) return "unit[1]";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " * " : "") + parts[i];
  return out;
}

namespace {

/// A bare polynomial: a unit, a scalar times a monomial, or a scalar times a
/// registered prime's defining polynomial.
FactoredElement from_polynomial(const NodeRing& ring, const TriPoly& p, std::int64_t k) {
  if (p.is_zero()) throw Error(Errc::Parse, "zero element");
  if (!p.constant_term().is_zero()) return FactoredElement::unit(p, k);
  if (p.terms().size() == 1) {
    const auto& [e, c] = *p.terms().begin();
    return (FactoredElement::constant(c) * FactoredElement::monomial(e[1], e[2], e[0])).pow(k);
  }
  for (const auto& id : ring.prime_ids()) {
    const TriPoly& d = ring.prime(id).defining;
    if (d.terms().size() != p.terms().size()) continue;
    const auto& [e0, c0] = *d.terms().begin();
    const auto it = p.terms().find(e0);
    if (it == p.terms().end()) continue;
    const FqElt scale = it->second / c0;
    if (d * TriPoly::constant(scale) == p) return (FactoredElement::constant(scale) * FactoredElement::prime(id)).pow(k);
  }
  throw Error(Errc::UnknownPrime, "no registered prime with defining polynomial " + p.to_string());
}

bool mentions_named_factor(const std::string& s) {
  return s.find("unit[") != std::string::npos || s.find("P(") != std::string::npos || s.find("Q2(") != std::string::npos;
}

}  // namespace

FactoredElement FactoredElement::parse(const NodeRing& ring, std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw Error(Errc::Parse, "empty element");
  const FieldSpec& f = ring.field();
  if (!mentions_named_factor(s) && (s.find('+') != std::string::npos || s.find(" - ") != std::string::npos)) {
    try {
      return from_polynomial(ring, TriPoly::parse(f, s), 1);
    } catch (const Error& e) {
      if (e.code() != Errc::Parse) throw;
    }
  }
  FactoredElement out;
  for (const auto& raw : split_top(s, '*')) {
    const std::string factor = strip(raw);
    if (factor.empty()) throw Error(Errc::Parse, "empty factor in '" + s + "'");
    // Exponent: a top-level '^' after the base.
    std::string base = factor;
    std::int64_t k = 1;
    {
      int depth = 0;
      std::size_t caret = std::string::npos;
      for (std::size_t i = 0; i < factor.size(); ++i) {
        const char ch = factor[i];
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (ch == '^' && depth == 0) caret = i;
      }
      if (caret != std::string::npos) {
        base = strip(factor.substr(0, caret));
        k = parse_i64(strip(factor.substr(caret + 1)), s);
      }
    }
    if (base.front() == '(' && base.back() == ')') {
      out = out * from_polynomial(ring, TriPoly::parse(f, base.substr(1, base.size() - 2)), k);
    } else if (base.rfind("unit[", 0) == 0 && base.back() == ']') {
      out = out * FactoredElement::unit(TriPoly::parse(f, base.substr(5, base.size() - 6)), k);
    } else if (base == "x") {
      out = out * FactoredElement::x(k);
    } else if (base == "y") {
      out = out * FactoredElement::y(k);
    } else if (base == "u") {
      out = out * FactoredElement::u(k);
    } else {
      std::string id = remove_spaces(base);
      if (id.rfind("P(", 0) == 0 && id.back() == ')') {
        const std::string inner = id.substr(2, id.size() - 3);
        const auto comma = inner.find(',');
        if (comma == std::string::npos) throw Error(Errc::Parse, "bad prime '" + base + "'");
        id = axis_shift_id(static_cast<int>(parse_i64(inner.substr(0, comma), s)), f.parse_element(inner.substr(comma + 1)));
      } else if (id.rfind("Q2(", 0) == 0 && id.back() == ')') {
        id = quadratic_id(f.parse_element(id.substr(3, id.size() - 4)));
      } else if (!ring.has_prime(id)) {
        out = out * from_polynomial(ring, TriPoly::parse(f, base), k);
        continue;
      }
      if (!ring.has_prime(id)) throw Error(Errc::UnknownPrime, id);
      out = out * FactoredElement::prime(id, k);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::int64_t ord_at(const NodeRing& ring, const FactoredElement& f, const Place& place) {
  if (place.kind == Place::Kind::Prime) {
    ring.prime(place.prime_id);
    return f.prime_exp(place.prime_id);
  }
  const bool at_x = place.kind == Place::Kind::AxisX;
  std::int64_t ord = ring.M() * (at_x ? f.ex() : f.ey()) + f.eu();
  for (const auto& [id, k] : f.prime_exps()) ord += k * ring.prime(id).axis_mults[at_x ? 0 : 1];
  return ord;
}

SeriesOverSeries embed_at_axis(const NodeRing& ring, const FactoredElement& f, Axis axis, int prec) {
  const auto outer = nested_field(ring.field(), prec);
  const int M = ring.M();
  const std::int64_t outer_exp = axis == Axis::X ? M * f.ex() + f.eu() : M * f.ey() + f.eu();
  const std::int64_t inner_exp = axis == Axis::X ? f.ey() - f.ex() : f.ex() - f.ey();
  SeriesOverSeries acc = SeriesOverSeries::monomial(
      outer, Series::monomial(outer.coeff, ring.field().one(), static_cast<int>(inner_exp)), static_cast<int>(outer_exp));
  for (const auto& uf : f.units()) acc *= embed_poly_at_axis(ring, uf.poly, axis, prec).pow(uf.exp);
  for (const auto& [id, k] : f.prime_exps()) acc *= embed_poly_at_axis(ring, ring.prime(id).defining, axis, prec).pow(k);
  return acc;
}

AxisResidue axis_residue(const NodeRing& ring, const FactoredElement& f, Axis axis, int prec) {
  const auto sf = series_field(ring.field(), prec);
  const std::int64_t inner_exp = axis == Axis::X ? f.ey() - f.ex() : f.ex() - f.ey();
  AxisResidue r;
  r.val = ord_at(ring, f, Place::axis(axis));
  r.lc = Series::monomial(sf, ring.field().one(), static_cast<int>(inner_exp));
  auto lead = [&](const TriPoly& p) {
    const auto e = embed_poly_at_axis(ring, p, axis, prec);
    const Series& c = e.coeffs().front();
    return Series::from_coeffs(sf, c.valuation(), c.coeffs());
  };
  for (const auto& uf : f.units()) r.lc *= lead(uf.poly).pow(uf.exp);
  for (const auto& [id, k] : f.prime_exps()) r.lc *= lead(ring.prime(id).defining).pow(k);
  return r;
}

Series restrict_to_prime(const NodeRing& ring, const FactoredElement& f, const std::string& id) {
  const PrimeCertificate& cert = ring.prime(id);
  if (f.prime_exp(id) != 0) {
    throw Error(Errc::NotAUnitAtPrime, f.to_string() + " has exponent " + std::to_string(f.prime_exp(id)) + " at " + id);
  }
  Series acc = Series::one(cert.phi_u.field());
  if (f.ex()) acc *= cert.phi_x.pow(f.ex());
  if (f.ey()) acc *= cert.phi_y.pow(f.ey());
  if (f.eu()) acc *= cert.phi_u.pow(f.eu());
  for (const auto& uf : f.units()) acc *= eval_poly(uf.poly, cert).pow(uf.exp);
  for (const auto& [other, k] : f.prime_exps()) acc *= eval_poly(ring.prime(other).defining, cert).pow(k);
  if (!acc.is_nonzero()) throw Error(Errc::PrecisionExhausted, "restriction of " + f.to_string() + " to " + id);
  return acc;
}

FactoredElement relation_rewrite(const FactoredElement& f, std::int64_t k, int M) {
  return f * FactoredElement::monomial(k, k, -k * M);
}

}  // namespace tamecft
