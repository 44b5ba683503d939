#pragma once

// The node ring R = F_q[[u,x,y]]/(xy - u^M), elements of its fraction field
// in factored form, its height-1 primes and the maps out of them.
//
// Axis primes: p_x = rad(x) and p_y = rad(y), both with uniformizer u. The
// completion at p_x is L_x = F_q((y))((u)) with x = u^M y^{-1}; symmetrically
// L_y = F_q((x))((u)) with y = u^M x^{-1}.
//
// Other height-1 primes are nominal: each is a PrimeCertificate carrying a
// parametrization R -> F_{q^d}[[s]] and a defining element.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tamecft/ff.hpp"
#include "tamecft/series.hpp"

namespace tamecft {

/// Polynomial in u, x, y over F_q. Terms are keyed by exponents (u, x, y).
class TriPoly {
 public:
  using Exps = std::array<int, 3>;

  TriPoly() = default;
  explicit TriPoly(FieldSpec f) : field_(f) {}

  static TriPoly constant(const FqElt& c);
  static TriPoly monomial(const FqElt& c, int eu, int ex, int ey);
  static TriPoly parse(const FieldSpec& f, std::string_view text);

  const FieldSpec& field() const { return field_; }
  const std::map<Exps, FqElt>& terms() const { return terms_; }
  FqElt constant_term() const;
  bool is_zero() const { return terms_.empty(); }

  TriPoly operator+(const TriPoly& b) const;
  TriPoly operator-(const TriPoly& b) const;
  TriPoly operator*(const TriPoly& b) const;

  std::string to_string() const;

  friend bool operator==(const TriPoly& a, const TriPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }
  friend bool operator<(const TriPoly& a, const TriPoly& b);

 private:
  void add_term(const Exps& e, const FqElt& c);
  FieldSpec field_;
  std::map<Exps, FqElt> terms_;
};

enum class Axis { X, Y };

struct Place {
  enum class Kind { AxisX, AxisY, Prime };
  Kind kind = Kind::AxisX;
  std::string prime_id;

  static Place axis(Axis a) { return {a == Axis::X ? Kind::AxisX : Kind::AxisY, {}}; }
  static Place prime(std::string id) { return {Kind::Prime, std::move(id)}; }
  bool is_axis() const { return kind != Kind::Prime; }
  Axis axis_value() const { return kind == Kind::AxisY ? Axis::Y : Axis::X; }
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.kind == b.kind && a.prime_id == b.prime_id; }
};

struct RingConfig {
  FieldSpec field;
  int M = 1;
  FqElt generator;
  int precision = kDefaultPrecision;

  /// Validates M >= 1 and M | q-1; generator defaults to the field's
  /// smallest primitive element.
  static RingConfig make(const FieldSpec& field, int M, int precision = kDefaultPrecision,
                         std::optional<FqElt> generator = std::nullopt);
};

enum class PrimeFamily { AxisShift, Quadratic, Custom };

struct PrimeCertificate {
  std::string id;
  int d = 1;
  FieldSpec residue_field;  // F_{q^d}
  Series phi_u, phi_x, phi_y;
  TriPoly defining;
  std::array<int, 2> axis_mults{0, 0};
  PrimeFamily family = PrimeFamily::Custom;
  /// Family parameter: a for P(a,c), M/2 for Q2(gamma).
  int family_exponent = 0;
};

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

/// p_{a,c}: defining element x - c u^a, parametrization u=s, x=c s^a, y=c^{-1} s^{M-a}.
PrimeCertificate axis_shift_prime(const RingConfig& cfg, int a, const FqElt& c);
/// Degree-2 prime x - gamma y (gamma a non-square, M even): u=s, x=delta s^{M/2},
/// y=delta^{-1} s^{M/2} with delta^2 = gamma in F_{q^2}.
PrimeCertificate quadratic_prime(const RingConfig& cfg, const FqElt& gamma);

std::string axis_shift_id(int a, const FqElt& c);
std::string quadratic_id(const FqElt& gamma);

CertificateCheck validate_certificate(const RingConfig& cfg, const PrimeCertificate& cert);

/// Certificate JSON: {"id","d","phi_u","phi_x","phi_y","defining","axis_mults"}.
std::string certificate_to_json(const PrimeCertificate& cert);
PrimeCertificate certificate_from_json(const RingConfig& cfg, std::string_view json);

/// Ring configuration plus its registry of height-1 primes. Populated at
/// construction, read-only afterwards.
class NodeRing {
 public:
  explicit NodeRing(RingConfig cfg, bool with_builtins = true,
                    const std::vector<PrimeCertificate>& extra = {});

  const RingConfig& config() const { return cfg_; }
  const FieldSpec& field() const { return cfg_.field; }
  int M() const { return cfg_.M; }
  int precision() const { return cfg_.precision; }

  const PrimeCertificate& prime(const std::string& id) const;
  bool has_prime(const std::string& id) const { return primes_.count(id) != 0; }
  const std::vector<std::string>& prime_ids() const { return ids_; }
  const std::vector<std::string>& axis_shift_ids() const { return axis_shift_ids_; }
  const std::vector<std::string>& quadratic_ids() const { return quadratic_ids_; }

 private:
  void add(PrimeCertificate cert);
  RingConfig cfg_;
  std::map<std::string, PrimeCertificate> primes_;
  std::vector<std::string> ids_, axis_shift_ids_, quadratic_ids_;
};

struct UnitFactor {
  TriPoly poly;
  std::int64_t exp = 1;
};

/// Element of K_R^x: product of unit polynomials (invertible constant term)
/// raised to integer powers, a monomial x^ex y^ey u^eu, and registered primes.
class FactoredElement {
 public:
  FactoredElement() = default;

  static FactoredElement unit(const TriPoly& poly, std::int64_t exp = 1);
  static FactoredElement constant(const FqElt& c);
  static FactoredElement monomial(std::int64_t ex, std::int64_t ey, std::int64_t eu);
  static FactoredElement x(std::int64_t k = 1) { return monomial(k, 0, 0); }
  static FactoredElement y(std::int64_t k = 1) { return monomial(0, k, 0); }
  static FactoredElement u(std::int64_t k = 1) { return monomial(0, 0, k); }
  static FactoredElement prime(const std::string& id, std::int64_t k = 1);

  /// Grammar: unit[<poly>]^k * x^k * y^k * u^k * P(a,c)^k * Q2(g)^k; every
  /// factor optional, exponents default to 1.
  static FactoredElement parse(const NodeRing& ring, std::string_view text);

  const std::vector<UnitFactor>& units() const { return units_; }
  std::int64_t ex() const { return ex_; }
  std::int64_t ey() const { return ey_; }
  std::int64_t eu() const { return eu_; }
  const std::map<std::string, std::int64_t>& prime_exps() const { return primes_; }
  std::int64_t prime_exp(const std::string& id) const;

  FactoredElement operator*(const FactoredElement& b) const;
  FactoredElement inverse() const { return pow(-1); }
  FactoredElement pow(std::int64_t k) const;

  std::string to_string() const;

  friend bool operator==(const FactoredElement& a, const FactoredElement& b) {
    return a.to_string() == b.to_string();
  }

 private:
  void normalize();
  std::vector<UnitFactor> units_;
  std::int64_t ex_ = 0, ey_ = 0, eu_ = 0;
  std::map<std::string, std::int64_t> primes_;
};

std::int64_t ord_at(const NodeRing& ring, const FactoredElement& f, const Place& place);

/// Image in L_x = F_q((y))((u)) or L_y = F_q((x))((u)).
SeriesOverSeries embed_at_axis(const NodeRing& ring, const FactoredElement& f, Axis axis, int prec);
SeriesOverSeries embed_poly_at_axis(const NodeRing& ring, const TriPoly& p, Axis axis, int prec);

/// Leading term of the axis embedding: f = u^val * (lc + O(u)), lc in F_q((t)).
struct AxisResidue {
  std::int64_t val = 0;
  Series lc;
};
AxisResidue axis_residue(const NodeRing& ring, const FactoredElement& f, Axis axis, int prec);

/// Evaluation at a prime's parametrization; requires net exponent 0 at it.
Series restrict_to_prime(const NodeRing& ring, const FactoredElement& f, const std::string& id);
/// Polynomial evaluated at a parametrization (coefficients embedded into F_{q^d}).
Series eval_poly(const TriPoly& p, const PrimeCertificate& cert);

/// (ex, ey, eu) -> (ex + k, ey + k, eu - kM): same element of K_R^x.
FactoredElement relation_rewrite(const FactoredElement& f, std::int64_t k, int M);

}  // namespace tamecft
