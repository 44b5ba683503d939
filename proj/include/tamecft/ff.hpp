#pragma once

// Finite fields F_{p^e} in polynomial basis.
//
// An element is stored as its index c0 + c1*p + ... + c_{e-1}*p^{e-1}, where
// c_i are the polynomial-basis coefficients. Multiplication and addition run
// through exp/log/Zech tables built once per field. Fields are interned: two
// FieldSpec handles with the same (p, modulus) share one table set, which is
// never freed, so FqElt can carry a plain pointer.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tamecft/errors.hpp"

namespace tamecft {

inline constexpr std::uint64_t kMaxFieldOrder = 1u << 20;

namespace detail {
struct FieldData;
}

class FqElt;

class FieldSpec {
 public:
  /// Field with the default modulus for (p, e): the first monic irreducible
  /// polynomial of degree e when ordered lexicographically on
  /// (c_{e-1}, ..., c_1, c_0).
  static FieldSpec make(std::uint32_t p, std::uint32_t e = 1);
  /// Field with an explicit modulus, coefficients low to high, monic.
  static FieldSpec make(std::uint32_t p, const std::vector<std::uint32_t>& modulus);
  /// Parses "p=5,e=1" or "p=3,e=2,mod=1,0,1".
  static FieldSpec parse(std::string_view text);

  FieldSpec() = default;

  std::uint32_t p() const;
  std::uint32_t e() const;
  std::uint32_t q() const;
  const std::vector<std::uint32_t>& modulus() const;
  bool is_prime_field() const { return e() == 1; }
  std::string to_string() const;

  FqElt zero() const;
  FqElt one() const;
  /// Element from its index in [0, q).
  FqElt element(std::uint64_t index) const;
  /// Image of an integer in the prime subfield.
  FqElt from_int(std::int64_t value) const;
  FqElt from_coeffs(const std::vector<std::int64_t>& coeffs) const;
  /// Parses the element text encoding ("3" or "1,2").
  FqElt parse_element(std::string_view text) const;

  /// Smallest-index generator of F_q^x.
  FqElt primitive_element() const;
  std::uint64_t order(const FqElt& a) const;
  bool is_generator(const FqElt& a) const;

  /// Discrete log of a to base g by baby-step giant-step; result in [0, q-2].
  std::uint64_t dlog(const FqElt& a, const FqElt& g) const;

  /// mu_n inside F_q^x, ordered by index. Requires n | q-1.
  std::vector<FqElt> roots_of_unity(std::uint64_t n) const;
  /// All solutions of X^n = a, ordered by index.
  std::vector<FqElt> nth_roots(const FqElt& a, std::uint64_t n) const;
  bool is_nth_power(const FqElt& a, std::uint64_t n) const;

  const detail::FieldData* data() const { return data_; }
  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.data_ == b.data_; }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return a.data_ != b.data_; }

 private:
  explicit FieldSpec(const detail::FieldData* data) : data_(data) {}
  const detail::FieldData& checked() const;
  const detail::FieldData* data_ = nullptr;
  friend class FqElt;
};

class FqElt {
 public:
  using Field = FieldSpec;

  static FqElt zero(const FieldSpec& f) { return f.zero(); }
  static FqElt one(const FieldSpec& f) { return f.one(); }

  FqElt() = default;

  FieldSpec field() const { return FieldSpec(f_); }
  std::uint32_t index() const { return v_; }
  std::vector<std::uint32_t> coeffs() const;

  bool is_zero() const { return v_ == 0; }
  bool is_one() const;

  FqElt operator+(const FqElt& b) const;
  FqElt operator-(const FqElt& b) const;
  FqElt operator*(const FqElt& b) const;
  FqElt operator/(const FqElt& b) const { return *this * b.inv(); }
  FqElt operator-() const;
  FqElt& operator+=(const FqElt& b) { return *this = *this + b; }
  FqElt& operator-=(const FqElt& b) { return *this = *this - b; }
  FqElt& operator*=(const FqElt& b) { return *this = *this * b; }

  FqElt inv() const;
  /// Any integer exponent; negative means inverse power.
  FqElt pow(std::int64_t k) const;

  std::string to_string() const;

  friend bool operator==(const FqElt& a, const FqElt& b) { return a.f_ == b.f_ && a.v_ == b.v_; }
  friend bool operator!=(const FqElt& a, const FqElt& b) { return !(a == b); }

 private:
  FqElt(const detail::FieldData* f, std::uint32_t v) : f_(f), v_(v) {}
  void same_field(const FqElt& b) const;
  const detail::FieldData* f_ = nullptr;
  std::uint32_t v_ = 0;
  friend class FieldSpec;
  friend struct detail::FieldData;
};

/// Embedding F_q -> F_{q^d}: the generator of the small field's polynomial
/// basis goes to the smallest-index root of its modulus in the big field.
class Embedding {
 public:
  Embedding(FieldSpec small, FieldSpec big);

  const FieldSpec& small() const { return small_; }
  const FieldSpec& big() const { return big_; }
  std::uint32_t degree() const { return degree_; }

  FqElt map(const FqElt& a) const;
  bool in_image(const FqElt& b) const;
  /// Preimage of an element of the image; SpecMismatch otherwise.
  FqElt lift(const FqElt& b) const;

 private:
  FieldSpec small_, big_;
  std::uint32_t degree_ = 1;
  std::vector<std::uint32_t> image_;
  std::vector<std::int64_t> preimage_;
};

/// Builds (or returns) the field F_{q^d} over the same prime and registers
/// the embedding of `base` into it.
FieldSpec extension_field(const FieldSpec& base, std::uint32_t d);
/// Registers and returns the embedding small -> big (e_small | e_big).
const Embedding& register_embedding(const FieldSpec& small, const FieldSpec& big);
/// Previously registered embedding, or nullptr.
const Embedding* find_embedding(const FieldSpec& small, const FieldSpec& big);

/// Norm from the field of `a` down to `base`: prod_{i<d} a^{|base|^i}.
/// SpecMismatch when no embedding base -> field(a) is registered.
FqElt norm(const FqElt& a, const FieldSpec& base);

/// Polynomial irreducibility over F_p by trial division (desk scale).
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p);
bool is_prime(std::uint64_t n);

}  // namespace tamecft
