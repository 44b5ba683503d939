#pragma once

// Randomized product-formula campaigns and their JSON reports.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tamecft/cft.hpp"
#include "tamecft/rng.hpp"

namespace tamecft {

struct CampaignConfig {
  std::uint32_t p = 5, e = 1;
  int M = 4;
  std::vector<std::uint64_t> ns{4};
  /// 0: Unramified(n) for each level n.
  std::int64_t d_frob = 0;
  int precision = kDefaultPrecision;
  std::int64_t trials = 300;
  std::uint64_t seed = 1;
  /// Prime families: P(a,c) with 1 <= a <= a_max (0: M-1) and c among the
  /// first c_count elements of F_q^x (0: all); Q2 primes when `quadratic`.
  int a_max = 0;
  int c_count = 0;
  bool quadratic = true;
  bool include_u = true;
  unsigned threads = 0;
  Convention convention;

  std::uint32_t q() const;
  /// Throws InvalidConfig / TamenessViolated.
  void validate() const;
  nlohmann::json to_json() const;
};

/// The ring a campaign runs on: built-in primes restricted to the configured families.
NodeRing campaign_ring(const CampaignConfig& cfg);
std::vector<CoverSpec> campaign_covers(const CampaignConfig& cfg);

/// Exponents in [-2,2] on x, y, u; up to three sampled primes (Q2 primes with
/// probability 1/4 when present); a random constant and up to two units
/// c + linear/quadratic terms.
FactoredElement random_element(Lcg64& rng, const NodeRing& ring);
std::pair<FactoredElement, FactoredElement> random_pair(const NodeRing& ring, std::uint64_t seed, std::uint64_t trial);

struct CampaignResult {
  nlohmann::json report;
  std::int64_t passed = 0, failed = 0, errors = 0;
  bool pass() const { return failed == 0 && errors == 0; }
};

CampaignResult run_campaign(const CampaignConfig& cfg);

nlohmann::json product_report_json(const ProductReport& rep);

}  // namespace tamecft
