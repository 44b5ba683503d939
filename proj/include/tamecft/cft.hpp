#pragma once

// Kummer and unramified covers of K_R, their local characters at every place,
// the boundary map, and the product-formula verifier.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tamecft/milnor.hpp"

namespace tamecft {

/// Kummer(x^alpha y^beta u^gamma * w^n, degree n) or Unramified(d_frob).
/// The optional unit w only affects values at primes of P.
struct CoverSpec {
  enum class Kind { Kummer, Unramified };
  Kind kind = Kind::Kummer;
  std::int64_t alpha = 0, beta = 0, gamma = 0;
  std::uint64_t n = 1;
  std::optional<TriPoly> nth_power_unit;
  std::int64_t d_frob = 1;

  static CoverSpec kummer(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::uint64_t n);
  static CoverSpec kummer_x(std::uint64_t n) { return kummer(1, 0, 0, n); }
  static CoverSpec kummer_y(std::uint64_t n) { return kummer(0, 1, 0, n); }
  static CoverSpec kummer_u(std::uint64_t n) { return kummer(0, 0, 1, n); }
  static CoverSpec unramified(std::int64_t d_frob);

  /// u-direction covers are flagged experimental.
  bool experimental() const;
  /// Kummer generator as an element of K_R.
  FactoredElement generator() const;
  /// Throws TamenessViolated / InvalidConfig.
  void validate(const RingConfig& cfg) const;
  std::string to_string() const;
};

/// Level-n shadow of Gal(K^ab_{R,t}/K_R): mu_n x Z/d_frob. frob is kept in Z.
struct GaloisLevelN {
  FqElt zeta;
  std::int64_t frob = 0;

  std::string to_string() const;
};

/// sigma_zeta on the root omega^r t^{1/n}: sigma(root)/root.
FqElt kummer_character(const FieldSpec& f, const FqElt& zeta, std::uint64_t r, std::uint64_t n);

/// h1/h2 or h1*h2 is an n-th power in K_R^x.
bool same_kummer_cover(const NodeRing& ring, const FactoredElement& h1, const FactoredElement& h2, std::uint64_t n);
bool is_nth_power(const NodeRing& ring, const FactoredElement& h, std::uint64_t n);

GaloisLevelN local_character(const NodeRing& ring, const Place& place, const FactoredElement& f,
                             const FactoredElement& g, const CoverSpec& cover, const Convention& conv = {});

struct BoundaryData {
  std::map<std::string, Series> primes;
  LocalInvariant x_axis, y_axis;

  std::string to_string() const;
};

/// Primes of P in supp f u supp g, in registry order.
std::vector<std::string> support_primes(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g);

BoundaryData boundary_map(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                          const Convention& conv = {});

struct PlaceValue {
  Place place;
  GaloisLevelN value;
};

struct CoverResult {
  CoverSpec cover;
  std::vector<PlaceValue> table;
  FqElt zeta_product;
  std::int64_t frob_sum = 0;
  bool pass = false;
};

struct ProductReport {
  std::vector<CoverResult> covers;
  bool pass = true;
};

ProductReport product_formula(const NodeRing& ring, const FactoredElement& f, const FactoredElement& g,
                              const std::vector<CoverSpec>& covers, const Convention& conv = {});

/// Named checks with their outcome.
struct CheckReport {
  struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Item> items;

  void add(std::string name, bool pass, std::string detail = {});
  bool pass() const;
};

/// Boundary patterns of {xi,x}, {xi,y}, {xi,u}, {xi,xy} and the cyclic image of
/// order n under the u-cover character.
CheckReport constant_symbol_check(const NodeRing& ring, const FqElt& xi, std::uint64_t n, const Convention& conv = {});

/// G = mu_n x Z/d_frob with its exact sequence, x/y cover equality and the
/// residual behaviour of the x-cover at the built-in primes.
CheckReport level_group_model(const NodeRing& ring, std::uint64_t n, std::int64_t d_frob);

}  // namespace tamecft
