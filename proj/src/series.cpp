#include "tamecft/series.hpp"

#include <cctype>
#include <sstream>

namespace tamecft {

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int parse_small_int(const std::string& text) {
  const std::string t = strip(text);
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(t, &pos);
  } catch (const std::exception&) {
    throw Error(Errc::Parse, "bad integer '" + t + "'");
  }
  if (pos != t.size()) throw Error(Errc::Parse, "bad integer '" + t + "'");
  return v;
}

std::string format_coeff(const FqElt& c) {
  if (c.field().is_prime_field()) return c.to_string();
  return "(" + c.to_string() + ")";
}

// Splits a coefficient list on commas outside parentheses.
std::vector<std::string> split_coeffs(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_series(const Series& s) {
  std::ostringstream os;
  if (s.is_zero()) return "v=0; 0";
  os << "v=" << s.valuation() << ";";
  const auto& c = s.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : " ") << format_coeff(c[i]);
  if (!s.is_exact()) os << "; prec=" << c.size();
  return os.str();
}

Series parse_series(const FieldSpec& f, std::string_view text, int default_prec) {
  std::vector<std::string> parts;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == ';') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
  }
  int v = 0;
  std::optional<int> prec;
  std::vector<FqElt> coeffs;
  bool have_coeffs = false;
  for (const auto& raw : parts) {
    const std::string part = strip(raw);
    if (part.rfind("v=", 0) == 0) {
      v = parse_small_int(part.substr(2));
    } else if (part.rfind("prec=", 0) == 0) {
      prec = parse_small_int(part.substr(5));
    } else if (!part.empty()) {
      if (have_coeffs) throw Error(Errc::Parse, "two coefficient lists in '" + std::string(text) + "'");
      have_coeffs = true;
      for (const auto& c : split_coeffs(part)) coeffs.push_back(f.parse_element(c));
    }
  }
  if (!have_coeffs) throw Error(Errc::Parse, "series '" + std::string(text) + "' has no coefficients");
  return Series::from_coeffs(series_field(f, default_prec), v, std::move(coeffs), prec);
}

std::string debug_string(const SeriesOverSeries& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  os << "u^" << s.valuation() << "*[";
  const auto& c = s.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " | " : "") << format_series(c[i]);
  os << "]";
  if (!s.is_exact()) os << " prec=" << c.size();
  return os.str();
}

Series nth_root(const Series& a, std::uint64_t n, std::optional<FqElt> generator) {
  const FieldSpec f = a.field().coeff;
  if (n == 0) throw Error(Errc::NotAnNthPower, "n = 0");
  if (n % f.p() == 0) throw Error(Errc::WildRoot, "p divides n=" + std::to_string(n));
  const auto [v, lc] = a.val_lc();
  if (v % static_cast<std::int64_t>(n) != 0) {
    throw Error(Errc::NotAnNthPower, "valuation " + std::to_string(v) + " not divisible by " + std::to_string(n));
  }
  const auto roots = f.nth_roots(lc, n);
  if (roots.empty()) throw Error(Errc::NotAnNthPower, "leading coefficient " + lc.to_string() + " is not an n-th power");
  const FqElt g = generator ? *generator : f.primitive_element();
  FqElt root_lc = roots.front();
  std::uint64_t best = f.dlog(root_lc, g);
  for (const auto& r : roots) {
    const std::uint64_t d = f.dlog(r, g);
    if (d < best) {
      best = d;
      root_lc = r;
    }
  }

  const auto& sf = a.field();
  const Series unit = a * Series::monomial(sf, lc.inv(), -v);
  Series unit_root = Series::one(sf);
  if (!(unit.is_exact() && unit == Series::one(sf))) {
    // Coefficient k of r^n is n*r_k plus terms in r_1..r_{k-1}; solve term by term.
    const int terms = unit.is_exact() ? sf.prec : unit.rel_precision();
    std::vector<FqElt> r(static_cast<std::size_t>(terms), f.zero());
    r[0] = f.one();
    const FqElt n_inv = f.from_int(static_cast<std::int64_t>(n % f.p())).inv();
    for (int k = 1; k < terms; ++k) {
      const Series cur = Series::from_coeffs(sf, 0, r, terms);
      const Series power = cur.pow(static_cast<std::int64_t>(n));
      const FqElt target = unit.coeff(k);
      r[static_cast<std::size_t>(k)] = (target - power.coeff(k)) * n_inv;
    }
    unit_root = Series::from_coeffs(sf, 0, r, terms);
  }
  return unit_root * Series::monomial(sf, root_lc, v / static_cast<int>(n));
}

}  // namespace tamecft
