#include "tamecft/campaign.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace tamecft {

std::uint32_t CampaignConfig::q() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= p;
  return static_cast<std::uint32_t>(q);
}

void CampaignConfig::validate() const {
  if (!is_prime(p) || e < 1) throw Error(Errc::InvalidConfig, "q must be a prime power");
  if (trials < 0) throw Error(Errc::InvalidConfig, "trials must be >= 0");
  if (ns.empty()) throw Error(Errc::InvalidConfig, "at least one level n is required");
  if (d_frob < 0) throw Error(Errc::InvalidConfig, "dfrob must be >= 0");
  if (a_max < 0 || a_max >= M || c_count < 0) throw Error(Errc::InvalidConfig, "prime family ranges");
  const std::uint32_t qq = q();
  if (M < 1 || (qq - 1) % static_cast<std::uint32_t>(M) != 0) throw Error(Errc::TamenessViolated, "M must divide q-1");
  for (auto n : ns) {
    if (n == 0 || static_cast<std::uint64_t>(M) % n != 0) {
      throw Error(Errc::TamenessViolated, "n=" + std::to_string(n) + " must divide M");
    }
  }
}

nlohmann::json CampaignConfig::to_json() const {
  nlohmann::json j;
  j["q"] = q();
  j["p"] = p;
  j["e"] = e;
  j["M"] = M;
  j["n"] = ns;
  j["dfrob"] = d_frob;
  j["precision"] = precision;
  j["trials"] = trials;
  j["seed"] = seed;
  j["families"] = {{"a_max", a_max == 0 ? M - 1 : a_max}, {"c_count", c_count}, {"quadratic", quadratic}};
  j["include_u"] = include_u;
  if (convention.drop_sign || convention.flip_axis_orientation) {
    j["convention"] = {{"drop_sign", convention.drop_sign}, {"flip_axis_orientation", convention.flip_axis_orientation}};
  }
  return j;
}

NodeRing campaign_ring(const CampaignConfig& cfg) {
  const FieldSpec f = FieldSpec::make(cfg.p, cfg.e);
  const RingConfig rc = RingConfig::make(f, cfg.M, cfg.precision);
  std::vector<PrimeCertificate> certs;
  const int a_max = cfg.a_max == 0 ? cfg.M - 1 : cfg.a_max;
  const std::uint32_t c_max = cfg.c_count == 0 ? f.q() - 1 : std::min<std::uint32_t>(cfg.c_count, f.q() - 1);
  for (int a = 1; a <= a_max; ++a) {
    for (std::uint32_t i = 1; i <= c_max; ++i) certs.push_back(axis_shift_prime(rc, a, f.element(i)));
  }
  if (cfg.quadratic && cfg.M % 2 == 0 && f.p() != 2) {
    for (std::uint32_t i = 1; i < f.q(); ++i) {
      if (!f.is_nth_power(f.element(i), 2)) certs.push_back(quadratic_prime(rc, f.element(i)));
    }
  }
  return NodeRing(rc, false, certs);
}

std::vector<CoverSpec> campaign_covers(const CampaignConfig& cfg) {
  std::vector<CoverSpec> out;
  for (auto n : cfg.ns) {
    out.push_back(CoverSpec::kummer_x(n));
    out.push_back(CoverSpec::kummer_y(n));
    if (cfg.include_u) out.push_back(CoverSpec::kummer_u(n));
    out.push_back(CoverSpec::unramified(cfg.d_frob == 0 ? static_cast<std::int64_t>(n) : cfg.d_frob));
  }
  return out;
}

FactoredElement random_element(Lcg64& rng, const NodeRing& ring) {
  const FieldSpec& f = ring.field();
  auto nonzero = [&] { return f.element(1 + rng.below(f.q() - 1)); };
  auto any = [&] { return f.element(rng.below(f.q())); };
  static const int kMonomials[9][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0}, {0, 2, 0},
                                       {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  FactoredElement out = FactoredElement::constant(nonzero());
  const int units = static_cast<int>(rng.below(3));
  for (int i = 0; i < units; ++i) {
    TriPoly p = TriPoly::constant(nonzero());
    const int terms = 1 + static_cast<int>(rng.below(3));
    for (int t = 0; t < terms; ++t) {
      const auto& m = kMonomials[rng.below(9)];
      p = p + TriPoly::monomial(any(), m[0], m[1], m[2]);
    }
    std::int64_t k = rng.range(-2, 1);
    if (k >= 0) ++k;
    out = out * FactoredElement::unit(p, k);
  }
  out = out * FactoredElement::monomial(rng.range(-2, 2), rng.range(-2, 2), rng.range(-2, 2));
  const auto& shifts = ring.axis_shift_ids();
  const auto& quads = ring.quadratic_ids();
  const int nprimes = static_cast<int>(rng.below(4));
  for (int i = 0; i < nprimes; ++i) {
    const bool use_quad = !quads.empty() && (shifts.empty() || rng.below(4) == 0);
    const auto& pool = use_quad ? quads : shifts;
    if (pool.empty()) break;
    const std::string& id = pool[rng.below(pool.size())];
    std::int64_t k = rng.range(-2, 1);
    if (k >= 0) ++k;
    out = out * FactoredElement::prime(id, k);
  }
  return out;
}

std::pair<FactoredElement, FactoredElement> random_pair(const NodeRing& ring, std::uint64_t seed, std::uint64_t trial) {
  Lcg64 rng = Lcg64::for_trial(seed, trial);
  FactoredElement f = random_element(rng, ring);
  FactoredElement g = random_element(rng, ring);
  return {std::move(f), std::move(g)};
}

nlohmann::json product_report_json(const ProductReport& rep) {
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& c : rep.covers) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& pv : c.table) {
      table.push_back({{"place", pv.place.to_string()}, {"zeta", pv.value.zeta.to_string()}, {"frob", pv.value.frob}});
    }
    covers.push_back({{"cover", c.cover.to_string()},
                      {"experimental", c.cover.experimental()},
                      {"table", table},
                      {"zeta_product", c.zeta_product.to_string()},
                      {"frob_sum", c.frob_sum},
                      {"pass", c.pass}});
  }
  return covers;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const NodeRing ring = campaign_ring(cfg);
  const auto covers = campaign_covers(cfg);
  for (const auto& c : covers) c.validate(ring.config());

  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  std::vector<nlohmann::json> records(trials);
  std::vector<int> status(trials, 0);  // 0 pass, 1 fail, 2 error
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      const auto [f, g] = random_pair(ring, cfg.seed, i);
      nlohmann::json rec;
      rec["trial"] = i;
      rec["f"] = f.to_string();
      rec["g"] = g.to_string();
      try {
        const ProductReport rep = product_formula(ring, f, g, covers, cfg.convention);
        rec["covers"] = product_report_json(rep);
        rec["pass"] = rep.pass;
        status[i] = rep.pass ? 0 : 1;
      } catch (const Error& e) {
        rec["pass"] = false;
        rec["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
        status[i] = 2;
      }
      records[i] = std::move(rec);
    }
  };
  unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, std::max<std::size_t>(trials, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CampaignResult out;
  for (int s : status) {
    if (s == 0) ++out.passed;
    if (s == 1) ++out.failed;
    if (s == 2) ++out.errors;
  }
  nlohmann::json covers_json = nlohmann::json::array();
  for (const auto& c : covers) covers_json.push_back(c.to_string());
  out.report["schema"] = 1;
  out.report["kind"] = "campaign";
  out.report["config"] = cfg.to_json();
  out.report["covers"] = covers_json;
  out.report["primes"] = ring.prime_ids().size();
  out.report["records"] = std::move(records);
  out.report["summary"] = {{"trials", cfg.trials}, {"passed", out.passed}, {"failed", out.failed}, {"errors", out.errors}};
  out.report["pass"] = out.pass();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.report["timing"] = {{"seconds", secs}};
  return out;
}

}  // namespace tamecft
