#include "tamecft/ff.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace tamecft {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::NotAGenerator: return "NotAGenerator";
    case Errc::TamenessViolated: return "TamenessViolated";
    case Errc::InvalidField: return "InvalidField";
    case Errc::AmbiguousZero: return "AmbiguousZero";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::NotAnNthPower: return "NotAnNthPower";
    case Errc::WildRoot: return "WildRoot";
    case Errc::CertificateInvalid: return "CertificateInvalid";
    case Errc::UnknownPrime: return "UnknownPrime";
    case Errc::NotAUnitAtPrime: return "NotAUnitAtPrime";
    case Errc::Parse: return "Parse";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

namespace {

using Poly = std::vector<std::uint32_t>;  // low to high, over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b over F_p; b monic-or-not with nonzero leading coefficient.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  std::uint64_t lead_inv = 1;
  {
    // b.back()^(p-2) mod p
    std::uint64_t base = b.back() % p, e = p - 2;
    while (e) {
      if (e & 1) lead_inv = lead_inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
  }
  while (a.size() > db) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - factor * b[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly_in, std::uint32_t p) {
  Poly poly = poly_in;
  trim(poly);
  if (poly.size() < 2) return false;
  const std::size_t deg = poly.size() - 1;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      Poly div(d + 1, 0);
      std::uint64_t t = k;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      div[d] = 1;
      if (poly_mod(poly, div, p).empty()) return false;
    }
  }
  return true;
}

namespace detail {

struct FieldData {
  std::uint32_t p = 0, e = 0, q = 0;
  Poly modulus;
  std::vector<std::uint32_t> exp;  // length 2(q-1)
  std::vector<std::int32_t> log;   // length q, log[0] = -1
  std::vector<std::int32_t> zech;  // log(1 + g^k), -1 when zero
  std::uint32_t neg_one_log = 0;
  std::uint32_t generator = 1;

  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      out += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return out;
  }

  Poly digits(std::uint32_t a) const {
    Poly d(e, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }

  std::uint32_t from_digits(const Poly& d) const {
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      if (i < d.size()) out += d[i] * scale;
      scale *= p;
    }
    return out;
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    const Poly da = digits(a), db = digits(b);
    Poly prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      for (std::uint32_t j = 0; j < e; ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p);
      }
    }
    return from_digits(poly_mod(prod, modulus, p));
  }

  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t r = 1;
    while (k) {
      if (k & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  }

  void build() {
    const std::uint64_t n = q - 1;
    const auto factors = prime_factors(n);
    generator = 0;
    for (std::uint32_t g = 1; g < q; ++g) {
      bool ok = slow_pow(g, n) == 1;
      for (auto r : factors) {
        if (!ok) break;
        if (slow_pow(g, n / r) == 1) ok = false;
      }
      if (ok) {
        generator = g;
        break;
      }
    }
    if (generator == 0) throw Error(Errc::InvalidField, "no generator found; modulus not irreducible?");
    exp.assign(2 * n, 0);
    log.assign(q, -1);
    std::uint32_t cur = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
      exp[k] = exp[k + n] = cur;
      log[cur] = static_cast<std::int32_t>(k);
      cur = slow_mul(cur, generator);
    }
    zech.assign(n, -1);
    for (std::uint64_t k = 0; k < n; ++k) {
      const std::uint32_t s = add_digits(1, exp[k]);
      zech[k] = log[s];
    }
    neg_one_log = (p == 2) ? 0 : static_cast<std::uint32_t>(n / 2);
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp[static_cast<std::uint32_t>(log[a]) + static_cast<std::uint32_t>(log[b])];
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t n = q - 1;
    const std::uint32_t la = static_cast<std::uint32_t>(log[a]);
    const std::uint32_t lb = static_cast<std::uint32_t>(log[b]);
    const std::uint32_t k = lb >= la ? lb - la : lb + n - la;
    const std::int32_t z = zech[k];
    if (z < 0) return 0;
    return exp[la + static_cast<std::uint32_t>(z)];
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (a == 0 || p == 2) return a;
    return exp[static_cast<std::uint32_t>(log[a]) + neg_one_log];
  }
};

}  // namespace detail

namespace {

struct FieldRegistry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, Poly>, std::unique_ptr<detail::FieldData>> fields;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> default_moduli;
  std::map<std::pair<const detail::FieldData*, const detail::FieldData*>, std::unique_ptr<Embedding>>
      embeddings;
};

FieldRegistry& registry() {
  static FieldRegistry r;
  return r;
}

Poly default_modulus(std::uint32_t p, std::uint32_t e) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  for (std::uint64_t k = 0; k < count; ++k) {
    Poly cand(e + 1, 0);
    std::uint64_t t = k;
    for (std::uint32_t i = 0; i < e; ++i) {
      cand[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    cand[e] = 1;
    if (is_irreducible_mod_p(cand, p)) return cand;
  }
  throw Error(Errc::InvalidField, "no irreducible polynomial found");
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::int64_t parse_int(const std::string& s) {
  const std::string t = strip(s);
  if (t.empty()) throw Error(Errc::Parse, "empty integer");
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw Error(Errc::Parse, "bad integer '" + t + "'");
  }
  if (pos != t.size()) throw Error(Errc::Parse, "bad integer '" + t + "'");
  return v;
}

}  // namespace

FieldSpec FieldSpec::make(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw Error(Errc::InvalidField, "p=" + std::to_string(p) + " is not prime");
  if (e < 1) throw Error(Errc::InvalidField, "e must be >= 1");
  auto& reg = registry();
  Poly mod;
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.default_moduli.find({p, e});
    if (it != reg.default_moduli.end()) mod = it->second;
  }
  if (mod.empty()) {
    double bits = e * std::log2(static_cast<double>(p));
    if (bits > 20.0) throw Error(Errc::InvalidField, "q exceeds 2^20");
    mod = default_modulus(p, e);
    std::lock_guard<std::mutex> lock(reg.mu);
    reg.default_moduli[{p, e}] = mod;
  }
  return make(p, mod);
}

FieldSpec FieldSpec::make(std::uint32_t p, const std::vector<std::uint32_t>& modulus_in) {
  if (!is_prime(p)) throw Error(Errc::InvalidField, "p=" + std::to_string(p) + " is not prime");
  Poly modulus = modulus_in;
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (modulus.size() < 2) throw Error(Errc::InvalidField, "modulus must have degree >= 1");
  if (modulus.back() != 1) throw Error(Errc::InvalidField, "modulus must be monic");
  const std::uint32_t e = static_cast<std::uint32_t>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(Errc::InvalidField, "q exceeds 2^20");
  }
  auto& reg = registry();
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.fields.find({p, modulus});
    if (it != reg.fields.end()) return FieldSpec(it->second.get());
  }
  if (!is_irreducible_mod_p(modulus, p)) throw Error(Errc::InvalidField, "modulus is reducible");
  auto data = std::make_unique<detail::FieldData>();
  data->p = p;
  data->e = e;
  data->q = static_cast<std::uint32_t>(q);
  data->modulus = modulus;
  data->build();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto [it, inserted] = reg.fields.emplace(std::make_pair(p, modulus), std::move(data));
  return FieldSpec(it->second.get());
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::uint32_t p = 0, e = 1;
  std::vector<std::uint32_t> mod;
  bool have_mod = false;
  std::string key;
  for (const auto& raw : split(text, ',')) {
    const std::string part = strip(raw);
    const auto eq = part.find('=');
    if (eq != std::string::npos) {
      key = strip(part.substr(0, eq));
      const std::string val = part.substr(eq + 1);
      if (key == "p") {
        p = static_cast<std::uint32_t>(parse_int(val));
      } else if (key == "e") {
        e = static_cast<std::uint32_t>(parse_int(val));
      } else if (key == "mod") {
        have_mod = true;
        mod.push_back(static_cast<std::uint32_t>(parse_int(val)));
      } else {
        throw Error(Errc::Parse, "unknown field key '" + key + "'");
      }
    } else if (key == "mod") {
      mod.push_back(static_cast<std::uint32_t>(parse_int(part)));
    } else {
      throw Error(Errc::Parse, "bad field spec '" + std::string(text) + "'");
    }
  }
  if (p == 0) throw Error(Errc::Parse, "field spec missing p");
  if (!have_mod) return make(p, e);
  if (mod.size() != e + 1) throw Error(Errc::Parse, "modulus length does not match e");
  return make(p, mod);
}

const detail::FieldData& FieldSpec::checked() const {
  if (!data_) throw Error(Errc::SpecMismatch, "null field");
  return *data_;
}

std::uint32_t FieldSpec::p() const { return checked().p; }
std::uint32_t FieldSpec::e() const { return checked().e; }
std::uint32_t FieldSpec::q() const { return checked().q; }
const std::vector<std::uint32_t>& FieldSpec::modulus() const { return checked().modulus; }

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  os << "p=" << p() << ",e=" << e();
  if (e() > 1) {
    os << ",mod=";
    for (std::size_t i = 0; i < modulus().size(); ++i) os << (i ? "," : "") << modulus()[i];
  }
  return os.str();
}

FqElt FieldSpec::zero() const { return FqElt(&checked(), 0); }
FqElt FieldSpec::one() const { return FqElt(&checked(), 1); }

FqElt FieldSpec::element(std::uint64_t index) const {
  if (index >= q()) throw Error(Errc::Parse, "element index out of range");
  return FqElt(data_, static_cast<std::uint32_t>(index));
}

FqElt FieldSpec::from_int(std::int64_t value) const {
  const std::int64_t pp = p();
  return FqElt(data_, static_cast<std::uint32_t>(((value % pp) + pp) % pp));
}

FqElt FieldSpec::from_coeffs(const std::vector<std::int64_t>& coeffs) const {
  if (coeffs.size() > e()) throw Error(Errc::Parse, "too many coefficients for field");
  const std::int64_t pp = p();
  Poly d;
  for (auto c : coeffs) d.push_back(static_cast<std::uint32_t>(((c % pp) + pp) % pp));
  return FqElt(data_, checked().from_digits(d));
}

FqElt FieldSpec::parse_element(std::string_view text) const {
  std::vector<std::int64_t> coeffs;
  std::string t = strip(text);
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  for (const auto& part : split(t, ',')) coeffs.push_back(parse_int(part));
  return from_coeffs(coeffs);
}

FqElt FieldSpec::primitive_element() const { return FqElt(data_, checked().generator); }

std::uint64_t FieldSpec::order(const FqElt& a) const {
  if (a.field() != *this) throw Error(Errc::SpecMismatch, "element from another field");
  if (a.is_zero()) throw Error(Errc::NotAUnit, "order of zero");
  const std::uint64_t n = q() - 1;
  const std::uint64_t l = static_cast<std::uint64_t>(checked().log[a.index()]);
  return n / std::gcd(n, l);
}

bool FieldSpec::is_generator(const FqElt& a) const { return !a.is_zero() && order(a) == q() - 1; }

std::uint64_t FieldSpec::dlog(const FqElt& a, const FqElt& g) const {
  if (a.field() != *this || g.field() != *this) throw Error(Errc::SpecMismatch, "dlog across fields");
  if (a.is_zero()) throw Error(Errc::NotAUnit, "dlog of zero");
  if (g.is_zero() || !is_generator(g)) throw Error(Errc::NotAGenerator, g.to_string() + " does not generate F_q^x");
  const std::uint64_t n = q() - 1;
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<std::uint32_t, std::uint64_t> baby;
  baby.reserve(m * 2);
  FqElt cur = one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur.index(), j);
    cur *= g;
  }
  const FqElt giant = g.pow(-static_cast<std::int64_t>(m));
  FqElt gamma = a;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(gamma.index());
    if (it != baby.end()) return (i * m + it->second) % n;
    gamma *= giant;
  }
  throw Error(Errc::NotAGenerator, "dlog failed");
}

std::vector<FqElt> FieldSpec::roots_of_unity(std::uint64_t n) const {
  const std::uint64_t qm1 = q() - 1;
  if (n == 0 || qm1 % n != 0) {
    throw Error(Errc::TamenessViolated, "n=" + std::to_string(n) + " does not divide q-1=" + std::to_string(qm1));
  }
  std::vector<FqElt> out;
  const auto& d = checked();
  for (std::uint64_t k = 0; k < n; ++k) out.push_back(FqElt(data_, d.exp[k * (qm1 / n)]));
  std::sort(out.begin(), out.end(), [](const FqElt& a, const FqElt& b) { return a.index() < b.index(); });
  return out;
}

std::vector<FqElt> FieldSpec::nth_roots(const FqElt& a, std::uint64_t n) const {
  if (a.field() != *this) throw Error(Errc::SpecMismatch, "element from another field");
  if (n == 0) throw Error(Errc::NotAnNthPower, "n = 0");
  if (a.is_zero()) return {zero()};
  const auto& d = checked();
  const std::uint64_t qm1 = q() - 1;
  const std::uint64_t l = static_cast<std::uint64_t>(d.log[a.index()]);
  const std::uint64_t g = std::gcd(n % qm1 == 0 ? qm1 : n % qm1, qm1);
  std::vector<FqElt> out;
  if (l % g != 0) return out;
  // Solve n*X = l mod qm1 by scanning X; qm1 <= 2^20.
  for (std::uint64_t x = 0; x < qm1; ++x) {
    if ((n % qm1) * x % qm1 == l) out.push_back(FqElt(data_, d.exp[x]));
  }
  std::sort(out.begin(), out.end(), [](const FqElt& x, const FqElt& y) { return x.index() < y.index(); });
  return out;
}

bool FieldSpec::is_nth_power(const FqElt& a, std::uint64_t n) const {
  if (a.is_zero()) return true;
  const std::uint64_t qm1 = q() - 1;
  const std::uint64_t l = static_cast<std::uint64_t>(checked().log[a.index()]);
  return l % std::gcd(n, qm1) == 0;
}

// ---------------------------------------------------------------------------

void FqElt::same_field(const FqElt& b) const {
  if (f_ != b.f_) throw Error(Errc::SpecMismatch, "mixed-field arithmetic");
}

std::vector<std::uint32_t> FqElt::coeffs() const { return f_->digits(v_); }

bool FqElt::is_one() const { return v_ == 1; }

FqElt FqElt::operator+(const FqElt& b) const {
  same_field(b);
  return FqElt(f_, f_->add(v_, b.v_));
}

FqElt FqElt::operator-(const FqElt& b) const {
  same_field(b);
  return FqElt(f_, f_->add(v_, f_->neg(b.v_)));
}

FqElt FqElt::operator*(const FqElt& b) const {
  same_field(b);
  return FqElt(f_, f_->mul(v_, b.v_));
}

FqElt FqElt::operator-() const { return FqElt(f_, f_->neg(v_)); }

FqElt FqElt::inv() const {
  if (v_ == 0) throw Error(Errc::NotAUnit, "inverse of zero");
  const std::uint32_t n = f_->q - 1;
  const std::uint32_t l = static_cast<std::uint32_t>(f_->log[v_]);
  return FqElt(f_, f_->exp[(n - l) % n]);
}

FqElt FqElt::pow(std::int64_t k) const {
  if (v_ == 0) {
    if (k > 0) return *this;
    if (k == 0) return FqElt(f_, 1);
    throw Error(Errc::NotAUnit, "negative power of zero");
  }
  const std::int64_t n = f_->q - 1;
  const std::int64_t l = f_->log[v_];
  std::int64_t r = ((l * (k % n)) % n + n) % n;
  return FqElt(f_, f_->exp[static_cast<std::size_t>(r)]);
}

std::string FqElt::to_string() const {
  if (!f_) return "<null>";
  if (f_->e == 1) return std::to_string(v_);
  const auto d = coeffs();
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(d[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

Embedding::Embedding(FieldSpec small, FieldSpec big) : small_(small), big_(big) {
  if (small.p() != big.p() || big.e() % small.e() != 0) {
    throw Error(Errc::SpecMismatch, "no embedding " + small.to_string() + " -> " + big.to_string());
  }
  degree_ = big.e() / small.e();
  // Root of the small modulus in the big field, smallest index first.
  const auto& mod = small.modulus();
  FqElt root;
  bool found = false;
  for (std::uint32_t i = 0; i < big.q() && !found; ++i) {
    const FqElt r = big.element(i);
    FqElt acc = big.zero();
    for (std::size_t k = mod.size(); k-- > 0;) acc = acc * r + big.from_int(mod[k]);
    if (acc.is_zero()) {
      root = r;
      found = true;
    }
  }
  if (!found) throw Error(Errc::SpecMismatch, "small modulus has no root in big field");
  image_.resize(small.q());
  preimage_.assign(big.q(), -1);
  for (std::uint32_t i = 0; i < small.q(); ++i) {
    const auto digits = small.element(i).coeffs();
    FqElt acc = big.zero();
    for (std::size_t k = digits.size(); k-- > 0;) acc = acc * root + big.from_int(digits[k]);
    image_[i] = acc.index();
    preimage_[acc.index()] = i;
  }
}

FqElt Embedding::map(const FqElt& a) const {
  if (a.field() != small_) throw Error(Errc::SpecMismatch, "embedding applied to foreign element");
  return big_.element(image_[a.index()]);
}

bool Embedding::in_image(const FqElt& b) const { return b.field() == big_ && preimage_[b.index()] >= 0; }

FqElt Embedding::lift(const FqElt& b) const {
  if (!in_image(b)) throw Error(Errc::SpecMismatch, b.to_string() + " is not in the base field");
  return small_.element(static_cast<std::uint64_t>(preimage_[b.index()]));
}

const Embedding& register_embedding(const FieldSpec& small, const FieldSpec& big) {
  auto& reg = registry();
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.embeddings.find({small.data(), big.data()});
    if (it != reg.embeddings.end()) return *it->second;
  }
  auto emb = std::make_unique<Embedding>(small, big);
  std::lock_guard<std::mutex> lock(reg.mu);
  auto [it, inserted] = reg.embeddings.emplace(std::make_pair(small.data(), big.data()), std::move(emb));
  return *it->second;
}

const Embedding* find_embedding(const FieldSpec& small, const FieldSpec& big) {
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.embeddings.find({small.data(), big.data()});
  return it == reg.embeddings.end() ? nullptr : it->second.get();
}

FieldSpec extension_field(const FieldSpec& base, std::uint32_t d) {
  if (d == 1) return base;
  FieldSpec big = FieldSpec::make(base.p(), base.e() * d);
  register_embedding(base, big);
  return big;
}

FqElt norm(const FqElt& a, const FieldSpec& base) {
  const FieldSpec big = a.field();
  if (big == base) return a;
  const Embedding* emb = find_embedding(base, big);
  if (!emb) throw Error(Errc::SpecMismatch, "no registered embedding for norm");
  FqElt result = big.one();
  FqElt conj = a;
  for (std::uint32_t i = 0; i < emb->degree(); ++i) {
    result *= conj;
    conj = conj.pow(base.q());
  }
  return emb->lift(result);
}

}  // namespace tamecft
