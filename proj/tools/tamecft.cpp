#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tamecft/campaign.hpp"
#include "tamecft/cft.hpp"
#include "tamecft/selfcheck.hpp"

using namespace tamecft;

namespace {

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct EvalArgs {
  std::string field = "p=5,e=1";
  int M = 0;
  int prec = kDefaultPrecision;
  std::string axis, prime, f, g, h, cover = "x";
  std::uint64_t level = 0;
  std::int64_t dfrob = 0;
  std::string negative;
};

Convention parse_convention(const std::string& name) {
  if (name.empty()) return {};
  if (name == "drop-sign") return {true, false};
  if (name == "flip-axis") return {false, true};
  throw Error(Errc::InvalidConfig, "unknown negative control '" + name + "'");
}

NodeRing eval_ring(const EvalArgs& a) {
  const FieldSpec f = FieldSpec::parse(a.field);
  const int M = a.M ? a.M : static_cast<int>(f.q() - 1);
  return NodeRing(RingConfig::make(f, M, a.prec));
}

Axis parse_axis(const std::string& s) {
  if (s == "X" || s == "x") return Axis::X;
  if (s == "Y" || s == "y") return Axis::Y;
  throw Error(Errc::Parse, "axis must be X or Y, got '" + s + "'");
}

CoverSpec parse_cover(const NodeRing& ring, const std::string& text, std::uint64_t n, std::int64_t dfrob) {
  if (text == "unramified") return CoverSpec::unramified(dfrob ? dfrob : static_cast<std::int64_t>(n));
  std::smatch m;
  if (std::regex_match(text, m, std::regex(R"(\s*unramified\((\d+)\)\s*)"))) return CoverSpec::unramified(std::stoll(m[1]));
  // Accept the printed form "gen^(1/n)", which overrides --level.
  std::string gen = text;
  if (std::regex_match(text, m, std::regex(R"(\s*\(?(.*?)\)?\^\(1/(\d+)\)\s*)"))) {
    gen = m[1];
    n = std::stoull(m[2]);
  }
  const FactoredElement h = FactoredElement::parse(ring, gen);
  if (!h.units().empty() || !h.prime_exps().empty()) {
    throw Error(Errc::Parse, "cover generator must be a monomial in x, y, u: '" + text + "'");
  }
  return CoverSpec::kummer(h.ex(), h.ey(), h.eu(), n);
}

int run_eval(const std::string& kind, const EvalArgs& a) {
  const bool has_place = !a.axis.empty() || !a.prime.empty();
  if (kind == "symbol" && a.prime.empty()) {
    const FieldSpec f = FieldSpec::parse(a.field);
    const Series sf = parse_series(f, a.f, a.prec);
    const Series sg = parse_series(f, a.g, a.prec);
    std::cout << tame_symbol_local(sf, sg, parse_convention(a.negative)).to_string() << "\n";
    return kPass;
  }
  const NodeRing ring = eval_ring(a);
  const Convention conv = parse_convention(a.negative);
  const FactoredElement f = FactoredElement::parse(ring, a.f);
  const FactoredElement g = FactoredElement::parse(ring, a.g);
  if (kind == "symbol") {
    std::cout << format_series(tame_symbol_at_prime(ring, f, g, a.prime, conv)) << "\n";
  } else if (kind == "invariant") {
    if (a.axis.empty()) throw Error(Errc::Parse, "invariant needs --axis");
    const LocalInvariant inv = k2_axis_invariant(ring, f, g, parse_axis(a.axis), conv);
    std::cout << inv.to_string();
    if (a.level) {
      const LevelInvariant lv = reduce_to_level(inv, a.level);
      std::cout << " level " << a.level << ": (" << lv.rho.to_string() << "," << lv.b << "," << lv.lambda.to_string()
                << ")";
    }
    std::cout << "\n";
  } else if (kind == "boundary") {
    std::cout << boundary_map(ring, f, g, conv).to_string() << "\n";
  } else if (kind == "triple") {
    if (a.axis.empty()) throw Error(Errc::Parse, "triple needs --axis");
    const FactoredElement h = FactoredElement::parse(ring, a.h);
    std::cout << triple_tame_axis(ring, f, g, h, parse_axis(a.axis), conv).to_string() << "\n";
  } else if (kind == "character") {
    const std::uint64_t n = a.level ? a.level : static_cast<std::uint64_t>(ring.M());
    const CoverSpec cover = parse_cover(ring, a.cover, n, a.dfrob);
    if (has_place) {
      const Place place = a.prime.empty() ? Place::axis(parse_axis(a.axis)) : Place::prime(a.prime);
      std::cout << local_character(ring, place, f, g, cover, conv).to_string() << "\n";
      return kPass;
    }
    const ProductReport rep = product_formula(ring, f, g, {cover}, conv);
    const CoverResult& c = rep.covers.front();
    for (const auto& pv : c.table) std::cout << pv.place.to_string() << ": " << pv.value.to_string() << "\n";
    std::cout << "product: (" << c.zeta_product.to_string() << "," << c.frob_sum << ") " << (c.pass ? "pass" : "FAIL")
              << "\n";
    return c.pass ? kPass : kMismatch;
  } else {
    throw Error(Errc::Parse, "unknown eval kind '" + kind + "'");
  }
  return kPass;
}

std::vector<std::uint64_t> parse_levels(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw Error(Errc::Parse, "bad level '" + item + "'");
    }
  }
  return out;
}

std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
  for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) <= q; ++p) {
    if (q % p != 0) continue;
    std::uint32_t e = 0;
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    if (q != 1) break;
    return {p, e};
  }
  throw Error(Errc::InvalidConfig, "q must be a prime power");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tame symbols, Kummer characters and the product formula on F_q[[u,x,y]]/(xy - u^M)"};
  app.require_subcommand(1);

  auto* selfcheck = app.add_subcommand("selfcheck", "Replay the worked-example ledger");
  bool json_out = false;
  std::string negative;
  selfcheck->add_flag("--json", json_out, "Print the JSON report");
  selfcheck->add_option("--negative-control", negative, "Inject a wrong convention: drop-sign | flip-axis");

  auto* campaign = app.add_subcommand("campaign", "Randomized product-formula campaign");
  std::uint64_t q = 5;
  std::uint32_t e_opt = 0;
  std::string levels = "4";
  std::string out_path;
  std::string campaign_negative;
  CampaignConfig cc;
  campaign->add_option("--q", q, "Field order");
  campaign->add_option("--e", e_opt, "Extension degree (checked against --q)");
  campaign->add_option("--M", cc.M, "Node exponent M, dividing q-1");
  campaign->add_option("--n", levels, "Levels n, comma separated, each dividing M");
  campaign->add_option("--dfrob", cc.d_frob, "Unramified degree (0: the level n)");
  campaign->add_option("--trials", cc.trials, "Number of random pairs");
  campaign->add_option("--seed", cc.seed, "PRNG seed");
  campaign->add_option("--prec", cc.precision, "Series precision");
  campaign->add_option("--out", out_path, "Write the JSON report here (default stdout)");
  campaign->add_option("--threads", cc.threads, "Worker threads (0: hardware)");
  campaign->add_option("--a-max", cc.a_max, "Largest a for P(a,c) primes (0: M-1)");
  campaign->add_option("--c-count", cc.c_count, "Number of c values for P(a,c) primes (0: all)");
  bool no_quadratic = false, no_u = false;
  campaign->add_flag("--no-quadratic", no_quadratic, "Leave out the degree-2 primes");
  campaign->add_flag("--no-u", no_u, "Leave out u-direction covers");
  campaign->add_option("--negative-control", campaign_negative, "Inject a wrong convention: drop-sign | flip-axis");

  auto* eval = app.add_subcommand("eval", "Evaluate one operation");
  eval->set_help_flag("--help", "Print this help message and exit");
  std::string kind;
  EvalArgs ea;
  eval->add_option("kind", kind, "symbol | invariant | character | boundary | triple")->required();
  eval->add_option("--field", ea.field, "Field spec, e.g. p=5,e=1");
  eval->add_option("--M", ea.M, "Node exponent (default q-1)");
  eval->add_option("--prec", ea.prec, "Series precision");
  eval->add_option("--axis", ea.axis, "X or Y");
  eval->add_option("--prime", ea.prime, "Prime id, e.g. P(2,2)");
  eval->add_option("--f", ea.f, "First entry")->required();
  eval->add_option("--g", ea.g, "Second entry")->required();
  eval->add_option("--h", ea.h, "Third entry (triple)");
  eval->add_option("--cover", ea.cover, "x | y | u | unramified | unramified(d) | monomial such as x^2*u | gen^(1/n)");
  eval->add_option("--level", ea.level, "Level n");
  eval->add_option("--dfrob", ea.dfrob, "Unramified degree");
  eval->add_option("--negative-control", ea.negative, "Inject a wrong convention: drop-sign | flip-axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*selfcheck) {
      const SelfcheckResult r = run_selfcheck(parse_convention(negative));
      if (json_out) std::cout << r.to_json().dump(2) << "\n";
      else std::cout << r.to_text();
      return r.pass() ? kPass : kMismatch;
    }
    if (*campaign) {
      const auto [p, e] = factor_prime_power(q);
      if (e_opt && e_opt != e) throw Error(Errc::InvalidConfig, "--e does not match --q");
      cc.p = p;
      cc.e = e;
      cc.ns = parse_levels(levels);
      cc.quadratic = !no_quadratic;
      cc.include_u = !no_u;
      cc.convention = parse_convention(campaign_negative);
      const CampaignResult r = run_campaign(cc);
      const std::string text = r.report.dump(2);
      if (out_path.empty()) {
        std::cout << text << "\n";
      } else {
        std::ofstream os(out_path);
        if (!os) throw Error(Errc::InvalidConfig, "cannot write " + out_path);
        os << text << "\n";
      }
      std::cerr << "campaign: " << r.passed << " passed, " << r.failed << " failed, " << r.errors << " errors\n";
      return r.pass() ? kPass : kMismatch;
    }
    if (*eval) return run_eval(kind, ea);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::Parse:
      case Errc::InvalidConfig:
      case Errc::InvalidField:
      case Errc::TamenessViolated:
      case Errc::UnknownPrime:
      case Errc::NotAGenerator:
        return kUsage;
      default:
        return kMismatch;
    }
  }
  return kUsage;
}
