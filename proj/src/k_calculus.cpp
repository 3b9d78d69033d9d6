#include "kdual/k_calculus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "kdual/p_invariants.hpp"

namespace kdual {

KTriple::KTriple(FgaGroup k0, GroupElement unit, FgaGroup k1)
    : pair_{std::move(k0), std::move(k1)}, unit_(std::move(unit)) {
  if (!(unit_.shape() == pair_.k0)) throw DomainError("unit " + unit_.to_string() + " does not belong to " + pair_.k0.to_string());
}

std::string KTriple::to_string() const {
  return "(" + pair_.k0.to_string() + ", " + unit_.to_string() + ", " + pair_.k1.to_string() + ")";
}

bool HomotopyProfile::operator<(const HomotopyProfile& rhs) const {
  if (pi_odd == rhs.pi_odd) return pi_even < rhs.pi_even;
  return pi_odd < rhs.pi_odd;
}

std::size_t HomotopyProfileHash::operator()(const HomotopyProfile& h) const noexcept {
  FgaGroupHash gh;
  return gh(h.pi_odd) * 0x9e3779b97f4a7c15ULL ^ gh(h.pi_even);
}

std::string to_string(ClassifyVerdict v) {
  switch (v) {
    case ClassifyVerdict::Isomorphic: return "ISOMORPHIC";
    case ClassifyVerdict::Reciprocal: return "RECIPROCAL";
    case ClassifyVerdict::Distinct: return "DISTINCT";
  }
  return "DISTINCT";
}

KPair cone_k(const KTriple& t) {
  KPair c;
  c.k1 = quotient_by(t.k0(), t.unit());
  c.k0 = t.unit().has_finite_order() ? direct_sum(t.k1(), FgaGroup::free(1)) : t.k1();
  return c;
}

KPair sw_dual_pair(const KPair& p) {
  return KPair{FgaGroup(p.k0.free_rank(), p.k1.torsion()), FgaGroup(p.k1.free_rank(), p.k0.torsion())};
}

KPair kunneth_pair(const KPair& a, const KPair& b) {
  KPair out;
  out.k0 = direct_sum(direct_sum(tensor(a.k0, b.k0), tensor(a.k1, b.k1)),
                      direct_sum(tor(a.k0, b.k1), tor(a.k1, b.k0)));
  out.k1 = direct_sum(direct_sum(tensor(a.k0, b.k1), tensor(a.k1, b.k0)),
                      direct_sum(tor(a.k0, b.k0), tor(a.k1, b.k1)));
  return out;
}

// ---------------------------------------------------------------------------
// Unit search

namespace {

std::set<Int> prime_union(std::initializer_list<const FgaGroup*> groups) {
  std::set<Int> out;
  for (const FgaGroup* g : groups)
    for (const Int& p : g->primes()) out.insert(p);
  return out;
}

std::vector<unsigned> exponents_at(const FgaGroup& g, const Int& p) {
  const PrimaryComponent* c = g.component(p);
  return c ? c->exponents : std::vector<unsigned>{};
}

// Per-prime torsion coordinates of a candidate unit, or nothing if no
// normal-form shape at p produces the target p-part.
std::optional<std::vector<Int>> local_unit(const Int& p, const std::vector<unsigned>& exps, const FgaGroup& target_p,
                                           std::optional<unsigned> l) {
  if (!l && FgaGroup(0, {{p, exps}}) == target_p) return std::vector<Int>(exps.size());
  for (const NormalFormData& d : normal_form_shapes(p, exps, l)) {
    const FgaGroup q = l ? g4_quotient_closed_form(d).q : g2_quotient_closed_form(d);
    if (q == target_p) return normal_form_element(d).torsion_coords();
  }
  return std::nullopt;
}

std::optional<GroupElement> constructive_unit(const FgaGroup& g, const FgaGroup& target, bool torsion_unit,
                                              const Int& n) {
  std::vector<Int> coords;
  const FgaGroup content = FgaGroup::cyclic(n == 0 ? Int(1) : n);
  for (const Int& p : prime_union({&g, &target, &content})) {
    std::optional<unsigned> l;
    if (!torsion_unit) l = mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) ? valuation(n, p) : 0u;
    const std::vector<unsigned> exps = exponents_at(g, p);
    auto local = local_unit(p, exps, primary_part(target, p), l);
    if (!local) return std::nullopt;
    coords.insert(coords.end(), local->begin(), local->end());
  }
  std::vector<Int> free(g.free_rank());
  if (!torsion_unit) free[0] = n;
  return GroupElement(g, std::move(coords), std::move(free));
}

std::optional<GroupElement> exhaustive_unit(const FgaGroup& g, const FgaGroup& target, bool torsion_unit,
                                            const Int& n) {
  const std::vector<CyclicFactor> factors = g.factors();
  std::vector<Int> free(g.free_rank());
  if (!torsion_unit) free[0] = n;
  std::vector<Int> coords(factors.size());
  std::function<std::optional<GroupElement>(std::size_t)> search = [&](std::size_t i) -> std::optional<GroupElement> {
    if (i == factors.size()) {
      GroupElement u(g, coords, free);
      if (quotient_by(g, u) == target) return u;
      return std::nullopt;
    }
    coords[i] = 0;
    if (auto found = search(i + 1)) return found;
    for (unsigned j = 0; j < factors[i].exponent; ++j) {
      coords[i] = ipow(factors[i].prime, j);
      if (auto found = search(i + 1)) return found;
    }
    return std::nullopt;
  };
  return search(0);
}

}  // namespace

GroupElement find_unit(const FgaGroup& g, const FgaGroup& target) {
  if (g.free_rank() < target.free_rank() || g.free_rank() > target.free_rank() + 1)
    throw DomainError("find_unit: no single element of " + g.to_string() + " has quotient " + target.to_string());
  const bool torsion_unit = g.free_rank() == target.free_rank();
  Int n = 0;
  if (!torsion_unit) {
    const Int tg = g.torsion_order();
    const Int tt = target.torsion_order();
    if (tt % tg != 0)
      throw DomainError("find_unit: torsion order of " + target.to_string() + " is not a multiple of that of " +
                        g.to_string());
    n = tt / tg;
  }
  if (auto u = constructive_unit(g, target, torsion_unit, n); u && quotient_by(g, *u) == target) return *u;
  if (auto u = exhaustive_unit(g, target, torsion_unit, n)) return *u;
  throw std::logic_error("find_unit: no element of " + g.to_string() + " has quotient " + target.to_string());
}

KTriple reciprocal(const KTriple& t) {
  const KPair c = cone_k(t);
  FgaGroup k0b(c.k0.free_rank(), c.k1.torsion());
  FgaGroup k1b(c.k1.free_rank(), c.k0.torsion());
  const FgaGroup target(t.k1().free_rank(), t.k0().torsion());
  GroupElement unit = find_unit(k0b, target);
  return KTriple(std::move(k0b), std::move(unit), std::move(k1b));
}

HomotopyProfile aut_homotopy(const KTriple& t) {
  const KPair k = kunneth_pair(t.pair(), sw_dual_pair(cone_k(t)));
  return HomotopyProfile{k.k0, k.k1};
}

HomotopyProfile aut_homotopy_closed_form(const KTriple& t) {
  const KPair c = cone_k(t);
  const long F0 = static_cast<long>(t.k0().free_rank());
  const long F1 = static_cast<long>(t.k1().free_rank());
  const long f0 = static_cast<long>(c.k0.free_rank());
  const long f1 = static_cast<long>(c.k1.free_rank());
  const long a = f0 - F1;
  const long b = F0 - f1;
  if (a < 0 || b < 0) throw std::logic_error("aut_homotopy_closed_form: rank identity violated for " + t.to_string());

  auto pow = [](const FgaGroup& g, long e) { return direct_power(g, static_cast<std::size_t>(e)); };
  FgaGroup odd = FgaGroup::free(static_cast<std::size_t>(F0 * f0 + F1 * f1));
  FgaGroup even = FgaGroup::free(static_cast<std::size_t>(F1 * f0 + F0 * f1));
  for (const Int& p : prime_union({&t.k0(), &t.k1(), &c.k1})) {
    const FgaGroup k0p = primary_part(t.k0(), p);
    const FgaGroup k1p = primary_part(t.k1(), p);
    const FgaGroup c1p = primary_part(c.k1, p);
    const FgaGroup ap = direct_sum(k1p, k0p);
    const FgaGroup atp = direct_sum(k1p, c1p);
    const FgaGroup mixed = tensor(ap, atp);
    odd = direct_sum(odd, direct_sum(direct_sum(pow(ap, F1), pow(atp, f1)),
                                     direct_sum(mixed, direct_sum(pow(k0p, a), pow(c1p, b)))));
    even = direct_sum(even, direct_sum(direct_sum(pow(ap, f1), pow(atp, F1)), direct_sum(mixed, pow(k1p, a + b))));
  }
  return HomotopyProfile{odd, even};
}

bool pointed_isomorphic(const KTriple& a, const KTriple& b) {
  return a.k0() == b.k0() && a.k1() == b.k1() && quotient_by(a.k0(), a.unit()) == quotient_by(b.k0(), b.unit());
}

ClassifyVerdict classify_triples(const KTriple& a, const KTriple& b) {
  if (pointed_isomorphic(a, b)) return ClassifyVerdict::Isomorphic;
  if (pointed_isomorphic(b, reciprocal(a))) return ClassifyVerdict::Reciprocal;
  return ClassifyVerdict::Distinct;
}

bool check_vn(const KTriple& t) {
  const KPair c = cone_k(t);
  const bool torsion_unit = t.unit().has_finite_order();
  for (const Int& p : prime_union({&t.k0(), &c.k1})) {
    const bool ok = torsion_unit ? satisfies_star_star(c.k1, t.k0(), p) : satisfies_star_star(t.k0(), c.k1, p);
    if (!ok) return false;
  }
  return true;
}

}  // namespace kdual
