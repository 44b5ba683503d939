#pragma once

// Truncated Laurent series over a pluggable coefficient field.
//
// A coefficient type C must provide: `using Field`, `static C zero(const Field&)`,
// `static C one(const Field&)`, `is_zero()` (exact zero only), `inv()`,
// `pow(int64)`, `field()`, and the ring operators. FqElt and LaurentSeries
// itself both qualify, so LaurentSeries<LaurentSeries<FqElt>> is F_q((y))((u)).
//
// A value is in one of four states:
//   exact zero                       -- the true zero element
//   exact nonzero                    -- finitely many terms, all known
//   inexact nonzero                  -- N >= 1 known terms from the valuation on
//   zero to precision, O(s^k)        -- no known term; arises from cancellation
// Nonzero values are normalized: the first stored coefficient is not an exact
// zero. Precision propagates by the min rule under addition (absolute) and
// under multiplication (relative).

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tamecft/errors.hpp"
#include "tamecft/ff.hpp"

namespace tamecft {

inline constexpr int kDefaultPrecision = 24;

template <class C>
struct SeriesField {
  typename C::Field coeff;
  int prec = kDefaultPrecision;

  friend bool operator==(const SeriesField& a, const SeriesField& b) {
    return a.coeff == b.coeff && a.prec == b.prec;
  }
};

template <class C>
class LaurentSeries {
 public:
  using Coeff = C;
  using Field = SeriesField<C>;

  LaurentSeries() = default;

  static LaurentSeries zero(const Field& f) {
    LaurentSeries s;
    s.field_ = f;
    s.exact_ = true;
    return s;
  }

  static LaurentSeries one(const Field& f) { return monomial(f, C::one(f.coeff), 0); }

  static LaurentSeries monomial(const Field& f, const C& c, int v) {
    LaurentSeries s;
    s.field_ = f;
    s.exact_ = true;
    s.val_ = v;
    s.c_.push_back(c);
    s.normalize();
    return s;
  }

  /// Coefficients c[i] of s^{v+i}. With `known_terms` set, the series is known
  /// to absolute precision v + known_terms; otherwise it is exact.
  static LaurentSeries from_coeffs(const Field& f, int v, std::vector<C> coeffs,
                                   std::optional<int> known_terms = std::nullopt) {
    LaurentSeries s;
    s.field_ = f;
    s.val_ = v;
    s.c_ = std::move(coeffs);
    if (known_terms) {
      if (*known_terms < 0) throw Error(Errc::PrecisionExhausted, "negative precision");
      s.exact_ = false;
      s.c_.resize(static_cast<std::size_t>(*known_terms), C::zero(f.coeff));
    } else {
      s.exact_ = true;
    }
    s.normalize();
    return s;
  }

  /// The inexact zero O(s^abs).
  static LaurentSeries big_o(const Field& f, int abs) {
    LaurentSeries s;
    s.field_ = f;
    s.exact_ = false;
    s.val_ = abs;
    return s;
  }

  const Field& field() const { return field_; }
  bool is_exact() const { return exact_; }
  /// Exact zero.
  bool is_zero() const { return exact_ && c_.empty(); }
  /// Zero to its full precision but not the exact zero.
  bool is_indeterminate() const { return !exact_ && c_.empty(); }
  bool is_nonzero() const { return !c_.empty(); }

  /// Valuation of a nonzero value (or the precision edge of O(s^k)).
  int valuation() const { return val_; }
  /// Number of known terms; INT_MAX when exact.
  int rel_precision() const { return exact_ ? INT_MAX : static_cast<int>(c_.size()); }
  int abs_precision() const { return exact_ ? INT_MAX : val_ + static_cast<int>(c_.size()); }
  const std::vector<C>& coeffs() const { return c_; }

  /// Coefficient of s^k; PrecisionExhausted beyond the known window.
  C coeff(int k) const {
    if (!exact_ && k >= abs_precision()) {
      throw Error(Errc::PrecisionExhausted, "coefficient beyond known precision");
    }
    return coeff_or_zero(k);
  }

  std::pair<int, C> val_lc() const {
    if (!is_nonzero()) {
      throw Error(Errc::AmbiguousZero, is_zero() ? "valuation of exact zero" : "value is zero to its precision");
    }
    return {val_, c_.front()};
  }

  LaurentSeries operator+(const LaurentSeries& b) const {
    if (is_zero()) return b;
    if (b.is_zero()) return *this;
    const bool exact = exact_ && b.exact_;
    const int abs = std::min(abs_precision(), b.abs_precision());
    const int lo = std::min(val_, b.val_);
    int hi = abs;
    if (exact) hi = std::max(val_ + static_cast<int>(c_.size()), b.val_ + static_cast<int>(b.c_.size()));
    if (hi <= lo) return big_o(field_, abs);
    std::vector<C> out;
    out.reserve(static_cast<std::size_t>(hi - lo));
    for (int k = lo; k < hi; ++k) out.push_back(coeff_or_zero(k) + b.coeff_or_zero(k));
    LaurentSeries r;
    r.field_ = field_;
    r.exact_ = exact;
    r.val_ = lo;
    r.c_ = std::move(out);
    r.normalize();
    return r;
  }

  LaurentSeries operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  LaurentSeries operator-(const LaurentSeries& b) const { return *this + (-b); }

  LaurentSeries operator*(const LaurentSeries& b) const {
    if (is_zero() || b.is_zero()) return zero(field_);
    if (is_indeterminate() || b.is_indeterminate()) return big_o(field_, val_ + b.val_);
    const int v = val_ + b.val_;
    const std::size_t na = c_.size(), nb = b.c_.size();
    std::size_t n = 0;
    const bool exact = exact_ && b.exact_;
    if (exact) {
      n = na + nb - 1;
    } else {
      n = std::min(exact_ ? SIZE_MAX : na, b.exact_ ? SIZE_MAX : nb);
    }
    std::vector<C> out(n, C::zero(field_.coeff));
    for (std::size_t i = 0; i < na && i < n; ++i) {
      if (c_[i].is_zero()) continue;
      const std::size_t lim = std::min(nb, n - i);
      for (std::size_t j = 0; j < lim; ++j) {
        if (b.c_[j].is_zero()) continue;
        out[i + j] += c_[i] * b.c_[j];
      }
    }
    LaurentSeries r;
    r.field_ = field_;
    r.exact_ = exact;
    r.val_ = v;
    r.c_ = std::move(out);
    r.normalize();
    return r;
  }

  LaurentSeries& operator+=(const LaurentSeries& b) { return *this = *this + b; }
  LaurentSeries& operator-=(const LaurentSeries& b) { return *this = *this - b; }
  LaurentSeries& operator*=(const LaurentSeries& b) { return *this = *this * b; }

  LaurentSeries inv() const {
    if (is_zero()) throw Error(Errc::NotAUnit, "inverse of exact zero");
    if (is_indeterminate()) throw Error(Errc::AmbiguousZero, "inverse of a value that is zero to its precision");
    const C b0 = c_.front().inv();
    if (exact_ && c_.size() == 1) return monomial(field_, b0, -val_);
    const std::size_t n = exact_ ? static_cast<std::size_t>(field_.prec) : c_.size();
    std::vector<C> out;
    out.reserve(n);
    out.push_back(b0);
    for (std::size_t k = 1; k < n; ++k) {
      C acc = C::zero(field_.coeff);
      const std::size_t lim = std::min(k, c_.size() - 1);
      for (std::size_t i = 1; i <= lim; ++i) {
        if (c_[i].is_zero()) continue;
        acc += c_[i] * out[k - i];
      }
      out.push_back(-(b0 * acc));
    }
    LaurentSeries r;
    r.field_ = field_;
    r.exact_ = false;
    r.val_ = -val_;
    r.c_ = std::move(out);
    r.normalize();
    return r;
  }

  LaurentSeries pow(std::int64_t k) const {
    if (k == 0) return one(field_);
    if (k < 0) return inv().pow(-k);
    LaurentSeries result = one(field_);
    LaurentSeries base = *this;
    while (k) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  /// Drops everything at or beyond absolute exponent `abs`.
  LaurentSeries truncated(int abs) const {
    if (is_zero()) return big_o(field_, abs);
    if (abs <= val_) return big_o(field_, std::min(abs, abs_precision()));
    LaurentSeries r = *this;
    const int keep = std::min(abs, abs_precision()) - val_;
    r.exact_ = false;
    r.c_.resize(static_cast<std::size_t>(keep), C::zero(field_.coeff));
    return r;
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.field_ == b.field_ && a.exact_ == b.exact_ && a.val_ == b.val_ && a.c_ == b.c_;
  }
  friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) { return !(a == b); }

  /// Value of coefficient k where known to be determined; zero below the
  /// valuation and past the end of an exact value.
  C coeff_or_zero(int k) const {
    if (k < val_ || c_.empty()) return C::zero(field_.coeff);
    const std::size_t i = static_cast<std::size_t>(k - val_);
    if (i >= c_.size()) return C::zero(field_.coeff);
    return c_[i];
  }

 private:
  void normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<int>(lead);
    }
    if (exact_) {
      while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
      if (c_.empty()) val_ = 0;
    }
  }

  Field field_{};
  bool exact_ = true;
  int val_ = 0;
  std::vector<C> c_;
};

using Series = LaurentSeries<FqElt>;
using SeriesOverSeries = LaurentSeries<Series>;

inline SeriesField<FqElt> series_field(const FieldSpec& f, int prec = kDefaultPrecision) { return {f, prec}; }
inline SeriesField<Series> nested_field(const FieldSpec& f, int prec = kDefaultPrecision) {
  return {series_field(f, prec), prec};
}

/// Coefficient-wise agreement on the window both operands know.
inline bool agrees(const FqElt& a, const FqElt& b) { return a == b; }
template <class C>
bool agrees(const LaurentSeries<C>& a, const LaurentSeries<C>& b) {
  if (a.is_zero() && b.is_zero()) return true;
  int hi = std::min(a.abs_precision(), b.abs_precision());
  int lo = std::min(a.valuation(), b.valuation());
  if (a.is_zero()) lo = b.valuation();
  if (b.is_zero()) lo = a.valuation();
  if (hi == INT_MAX) {
    auto end = [](const LaurentSeries<C>& s) { return s.is_zero() ? INT_MIN : s.valuation() + static_cast<int>(s.coeffs().size()); };
    hi = std::max(end(a), end(b));
  }
  for (int k = lo; k < hi; ++k) {
    if (!agrees(a.coeff_or_zero(k), b.coeff_or_zero(k))) return false;
  }
  return true;
}

/// Text encoding "v=-1; 1,0,2; prec=3". Extension-field coefficients are
/// written in parentheses, "(1,2)". Without a prec suffix the value is exact.
std::string format_series(const Series& s);
Series parse_series(const FieldSpec& f, std::string_view text, int default_prec = kDefaultPrecision);

std::string debug_string(const SeriesOverSeries& s);

/// n-th root of a Laurent series over a finite field, gcd(n, p) = 1. The root
/// of the leading coefficient is the one with the smallest discrete log with
/// respect to `generator` (the field's primitive element when omitted).
Series nth_root(const Series& a, std::uint64_t n, std::optional<FqElt> generator = std::nullopt);

}  // namespace tamecft
