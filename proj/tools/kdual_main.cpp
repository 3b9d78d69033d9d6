// kdual: command-line front end for the group and K-invariant calculus.
//
// Exit codes: 0 success, 1 parse/usage error, 2 domain error, 3 failed verification.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kdual/brute_force.hpp"
#include "kdual/k_calculus.hpp"
#include "kdual/literal.hpp"
#include "kdual/p_invariants.hpp"
#include "kdual/report_json.hpp"
#include "kdual/verifier.hpp"

namespace {

using namespace kdual;
using nlohmann::json;

constexpr int kExitParse = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerification = 3;

struct TripleArgs {
  std::string k0 = "0";
  std::string unit;
  std::string k1 = "0";

  void add(CLI::App* app, const std::string& prefix, bool with_unit) {
    app->add_option("--" + prefix + "k0", k0, "K_0 group literal")->required();
    if (with_unit) app->add_option("--" + prefix + "unit", unit, "unit class literal in K_0")->required();
    app->add_option("--" + prefix + "k1", k1, "K_1 group literal")->required();
  }
  KPair pair() const { return KPair{parse_group(k0), parse_group(k1)}; }
  KTriple triple() const {
    FgaGroup g0 = parse_group(k0);
    GroupElement u = parse_element(unit, g0);
    return KTriple(std::move(g0), std::move(u), parse_group(k1));
  }
};

Int parse_prime(const std::string& text) {
  Int p;
  if (p.set_str(text, 10) != 0 || p < 2) throw ParseError("expected a prime, got '" + text + "'", 0);
  if (!is_prime(p)) throw DomainError(text + " is not prime");
  return p;
}

std::string join(const std::vector<unsigned>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "}";
}

std::string triple_text(const KTriple& t) {
  return "k0=" + t.k0().to_string() + ", unit=" + t.unit().to_string() + ", k1=" + t.k1().to_string();
}

std::string pair_text(const KPair& p) { return "k0=" + p.k0.to_string() + ", k1=" + p.k1.to_string(); }

std::string profile_text(const HomotopyProfile& h) {
  return "pi_odd=" + h.pi_odd.to_string() + ", pi_even=" + h.pi_even.to_string();
}

std::string nf_text(const NormalFormData& d) {
  return "mode=" + to_string(d.mode) + " l=" + std::to_string(d.l) + " untouched=" + join(d.untouched) +
         " k=" + join(d.k) + " r=" + join(d.r);
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finitely generated abelian group tools and K-invariant calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "structured output")->configurable(false);

  std::string group, other, element, target, matrix, prime;
  std::vector<std::string> elements;
  std::optional<unsigned> augment;
  bool closed_form = false;
  TripleArgs a, b;
  std::string suite, bounds;
  unsigned workers = 1;

  auto* normalize = app.add_subcommand("normalize", "canonical form of a group");
  normalize->add_option("--group", group)->required();

  auto* snf_cmd = app.add_subcommand("snf", "Smith normal form s = u m v");
  snf_cmd->add_option("--matrix", matrix, "e.g. [[2,4],[6,8]]")->required();

  auto* quotient = app.add_subcommand("quotient", "quotient of a group by elements");
  quotient->add_option("--group", group)->required();
  quotient->add_option("--element", elements, "repeatable");

  auto* order = app.add_subcommand("order", "order of an element");
  order->add_option("--group", group)->required();
  order->add_option("--element", element)->required();

  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product");
  tensor_cmd->add_option("--group", group)->required();
  tensor_cmd->add_option("--with", other)->required();

  auto* tor_cmd = app.add_subcommand("tor", "torsion product");
  tor_cmd->add_option("--group", group)->required();
  tor_cmd->add_option("--with", other)->required();

  auto* invariants = app.add_subcommand("invariants", "exponent multiset of the p-part");
  invariants->add_option("--group", group)->required();
  invariants->add_option("--prime", prime)->required();

  auto* star = app.add_subcommand("star", "condition (*) for a pair of groups at p");
  auto* star2 = app.add_subcommand("star2", "condition (**) for a pair of groups at p");
  for (auto* cmd : {star, star2}) {
    cmd->add_option("--group", group)->required();
    cmd->add_option("--with", other)->required();
    cmd->add_option("--prime", prime)->required();
  }

  auto* nf = app.add_subcommand("nf", "normal form of an element of a p-group, or of (e, p^l) in G + Z");
  nf->add_option("--group", group)->required();
  nf->add_option("--element", element)->required();
  nf->add_option("--prime", prime)->required();
  nf->add_option("--l", augment, "augment with the Z coordinate p^l");

  auto* aut = app.add_subcommand("aut-equiv", "whether an automorphism sends one element to another");
  aut->add_option("--group", group)->required();
  aut->add_option("--element", element)->required();
  aut->add_option("--to", target)->required();

  auto* cone = app.add_subcommand("cone", "K-groups of the mapping cone of the unit");
  a.add(cone, "", true);
  auto* dual = app.add_subcommand("dual", "Spanier-Whitehead dual K-groups");
  a.add(dual, "", false);
  auto* kunneth = app.add_subcommand("kunneth", "K-groups of a tensor product");
  a.add(kunneth, "", false);
  b.add(kunneth, "with-", false);
  auto* recip = app.add_subcommand("reciprocal", "reciprocal partner of a triple");
  a.add(recip, "", true);
  auto* homotopy = app.add_subcommand("homotopy", "homotopy groups of the automorphism group");
  a.add(homotopy, "", true);
  homotopy->add_flag("--closed-form", closed_form, "evaluate the prime-by-prime closed form");
  auto* classify = app.add_subcommand("classify", "isomorphic / reciprocal / distinct");
  a.add(classify, "", true);
  b.add(classify, "other-", true);

  auto* verify = app.add_subcommand("verify", "run verification suites (all when no name is given)");
  verify->add_option("suite", suite, "suite name");
  verify->add_option("--bounds", bounds, "e.g. primes=2,3;exp=3;factors=2;rank=2");
  verify->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*normalize) {
      const FgaGroup g = parse_group(group);
      json j = to_json(g);
      j["literal"] = g.to_string();
      j["invariant_factors"] = json::array();
      for (const Int& d : g.invariant_factors()) j["invariant_factors"].push_back(to_json(d));
      emit(as_json, j, g.to_string());
    } else if (*snf_cmd) {
      const SmithForm f = snf(parse_matrix(matrix));
      emit(as_json, {{"s", to_json(f.s)}, {"u", to_json(f.u)}, {"v", to_json(f.v)}},
           "s=" + f.s.to_string() + "\nu=" + f.u.to_string() + "\nv=" + f.v.to_string());
    } else if (*quotient) {
      const FgaGroup g = parse_group(group);
      std::vector<GroupElement> es;
      for (const auto& e : elements) es.push_back(parse_element(e, g));
      const FgaGroup q = quotient_by(g, es);
      emit(as_json, to_json(q), q.to_string());
    } else if (*order) {
      const FgaGroup g = parse_group(group);
      const auto o = element_order(parse_element(element, g));
      emit(as_json, {{"order", o ? to_json(*o) : json("INFINITE")}}, o ? o->get_str() : "INFINITE");
    } else if (*tensor_cmd || *tor_cmd) {
      const FgaGroup g = parse_group(group), h = parse_group(other);
      const FgaGroup r = *tensor_cmd ? tensor(g, h) : tor(g, h);
      emit(as_json, to_json(r), r.to_string());
    } else if (*invariants) {
      const PExponentProfile pr = invariant_I(parse_group(group), parse_prime(prime));
      emit(as_json, to_json(pr), "I=" + join(pr.exponents) + " L=" + std::to_string(pr.length()));
    } else if (*star || *star2) {
      const FgaGroup g = parse_group(group), h = parse_group(other);
      const Int p = parse_prime(prime);
      const bool ok = *star ? satisfies_star(g, h, p) : satisfies_star_star(g, h, p);
      emit(as_json, {{"holds", ok}}, ok ? "true" : "false");
    } else if (*nf) {
      const FgaGroup g = parse_group(group);
      const GroupElement e = parse_element(element, g);
      const Int p = parse_prime(prime);
      if (augment) {
        const NormalFormData d = g3_normal_form(g, e, *augment, p);
        const AugmentedQuotient q = g4_quotient_closed_form(d);
        json j = to_json(d);
        j["quotient"] = to_json(q.q);
        j["t_tilde"] = to_json(q.t_tilde);
        emit(as_json, j, nf_text(d) + "\nquotient=" + q.q.to_string() + "\nt_tilde=" + q.t_tilde.to_string());
      } else {
        const NormalFormData d = g1_normal_form(g, e, p);
        const FgaGroup q = g2_quotient_closed_form(d);
        json j = to_json(d);
        j["quotient"] = to_json(q);
        emit(as_json, j, nf_text(d) + "\nquotient=" + q.to_string());
      }
    } else if (*aut) {
      const FgaGroup g = parse_group(group);
      const bool ok = aut_sends(g, parse_element(element, g), parse_element(target, g));
      emit(as_json, {{"equivalent", ok}}, ok ? "true" : "false");
    } else if (*cone) {
      const KPair c = cone_k(a.triple());
      emit(as_json, to_json(c), pair_text(c));
    } else if (*dual) {
      const KPair d = sw_dual_pair(a.pair());
      emit(as_json, to_json(d), pair_text(d));
    } else if (*kunneth) {
      const KPair k = kunneth_pair(a.pair(), b.pair());
      emit(as_json, to_json(k), pair_text(k));
    } else if (*recip) {
      const KTriple r = reciprocal(a.triple());
      emit(as_json, to_json(r), triple_text(r));
    } else if (*homotopy) {
      const KTriple t = a.triple();
      const HomotopyProfile h = closed_form ? aut_homotopy_closed_form(t) : aut_homotopy(t);
      emit(as_json, to_json(h), profile_text(h));
    } else if (*classify) {
      const ClassifyVerdict v = classify_triples(a.triple(), b.triple());
      emit(as_json, {{"verdict", to_string(v)}}, to_string(v));
    } else if (*verify) {
      std::vector<std::string> names;
      if (suite.empty()) {
        names = suite_names();
      } else if (is_suite_name(suite)) {
        names = {suite};
      } else {
        std::cerr << "unknown suite '" << suite << "'; expected one of:";
        for (const auto& n : suite_names()) std::cerr << " " << n;
        std::cerr << "\n";
        return kExitParse;
      }
      bool all_passed = true;
      json reports = json::array();
      for (const auto& name : names) {
        const CatalogBounds cb = CatalogBounds::parse(bounds, default_bounds(name));
        const VerificationReport rep = run_suite(name, cb, RunOptions{workers});
        all_passed = all_passed && rep.passed();
        if (as_json)
          reports.push_back(to_json(rep));
        else
          std::cout << rep.to_text() << std::flush;
      }
      if (as_json) std::cout << (names.size() == 1 ? reports.front() : reports).dump(2) << "\n";
      return all_passed ? 0 : kExitVerification;
    }
  } catch (const kdual::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
