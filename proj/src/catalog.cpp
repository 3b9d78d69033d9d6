#include "kdual/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "kdual/p_invariants.hpp"

namespace kdual {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

unsigned parse_nat(const std::string& value, std::size_t at) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("expected a non-negative integer, got '" + value + "'", at);
  try {
    return static_cast<unsigned>(std::stoul(value));
  } catch (const std::exception&) {
    throw ParseError("integer out of range: '" + value + "'", at);
  }
}

// Exponent multisets (ascending) with entries <= max_exp and at most max_len entries.
std::vector<std::vector<unsigned>> exponent_multisets(unsigned max_exp, unsigned max_len) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned)> rec = [&](unsigned lo) {
    out.push_back(cur);
    if (cur.size() == max_len) return;
    for (unsigned e = lo; e <= max_exp; ++e) {
      cur.push_back(e);
      rec(e);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

}  // namespace

CatalogBounds CatalogBounds::parse(std::string_view text, CatalogBounds base) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(';', pos), text.size());
    const std::string item = trim(text.substr(pos, end - pos));
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value in bounds, got '" + item + "'", pos);
      const std::string key = trim(std::string_view(item).substr(0, eq));
      const std::string value = trim(std::string_view(item).substr(eq + 1));
      if (key == "primes") {
        base.primes.clear();
        std::stringstream ss(value);
        std::string part;
        while (std::getline(ss, part, ',')) {
          Int p = parse_nat(trim(part), pos);
          if (!is_prime(p)) throw ParseError("not a prime: " + trim(part), pos);
          base.primes.push_back(p);
        }
        if (base.primes.empty()) throw ParseError("primes must be nonempty", pos);
        std::sort(base.primes.begin(), base.primes.end());
        base.primes.erase(std::unique(base.primes.begin(), base.primes.end()), base.primes.end());
      } else if (key == "exp") {
        base.max_exponent = parse_nat(value, pos);
      } else if (key == "factors") {
        base.max_factors_per_prime = parse_nat(value, pos);
      } else if (key == "rank") {
        base.max_free_rank = parse_nat(value, pos);
      } else if (key == "content") {
        base.max_unit_content = parse_nat(value, pos);
      } else if (key == "order") {
        base.max_order = parse_nat(value, pos);
      } else if (key == "logorder") {
        base.max_log_order = parse_nat(value, pos);
      } else if (key == "aug") {
        base.max_augment_exponent = parse_nat(value, pos);
      } else if (key == "ele") {
        base.ele_bound = parse_nat(value, pos);
      } else {
        throw ParseError("unknown bounds key '" + key + "'", pos);
      }
    }
    pos = end + 1;
  }
  return base;
}

std::string CatalogBounds::to_string() const {
  std::string out = "primes=";
  for (std::size_t i = 0; i < primes.size(); ++i) out += (i ? "," : "") + primes[i].get_str();
  out += ";exp=" + std::to_string(max_exponent) + ";factors=" + std::to_string(max_factors_per_prime) +
         ";rank=" + std::to_string(max_free_rank) + ";content=" + std::to_string(max_unit_content);
  if (max_order != 0) out += ";order=" + max_order.get_str();
  if (max_log_order != 0) out += ";logorder=" + std::to_string(max_log_order);
  out += ";aug=" + std::to_string(max_augment_exponent) + ";ele=" + std::to_string(ele_bound);
  return out;
}

std::vector<FgaGroup> enumerate_groups(const CatalogBounds& b) {
  const auto multisets = exponent_multisets(b.max_exponent, b.max_factors_per_prime);
  std::vector<FgaGroup> torsion{FgaGroup()};
  for (const Int& p : b.primes) {
    std::vector<FgaGroup> next;
    for (const FgaGroup& base : torsion) {
      for (const auto& ms : multisets) {
        if (b.max_log_order != 0 && std::accumulate(ms.begin(), ms.end(), 0u) > b.max_log_order) continue;
        FgaGroup g = direct_sum(base, FgaGroup(0, {{p, ms}}));
        if (b.max_order != 0 && g.torsion_order() > b.max_order) continue;
        next.push_back(std::move(g));
      }
    }
    torsion = std::move(next);
  }
  std::vector<FgaGroup> out;
  for (unsigned rank = 0; rank <= b.max_free_rank; ++rank)
    for (const FgaGroup& t : torsion) out.push_back(direct_sum(FgaGroup::free(rank), t));
  return out;
}

std::vector<GroupElement> unit_transversal(const FgaGroup& g, const CatalogBounds& b) {
  const std::vector<CyclicFactor> factors = g.factors();
  const unsigned max_content = g.free_rank() == 0 ? 0 : b.max_unit_content;
  // Elements sharing free content and quotient are one orbit; aut_sends
  // confirms each merge instead of assuming it.
  std::map<std::pair<Int, FgaGroup>, std::vector<GroupElement>> buckets;
  std::vector<GroupElement> out;
  std::vector<Int> coords(factors.size());
  for (unsigned c = 0; c <= max_content; ++c) {
    std::vector<Int> free(g.free_rank());
    if (!free.empty()) free[0] = c;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == factors.size()) {
        GroupElement u(g, coords, free);
        auto& reps = buckets[{Int(c), quotient_by(g, u)}];
        for (const GroupElement& r : reps)
          if (aut_sends(g, r, u)) return;
        reps.push_back(u);
        out.push_back(std::move(u));
        return;
      }
      coords[i] = 0;
      rec(i + 1);
      for (unsigned j = 0; j < factors[i].exponent; ++j) {
        coords[i] = ipow(factors[i].prime, j);
        rec(i + 1);
      }
    };
    rec(0);
  }
  return out;
}

TripleCatalog::TripleCatalog(const CatalogBounds& b) : groups_(enumerate_groups(b)) {
  for (std::size_t i = 0; i < groups_.size(); ++i)
    for (GroupElement& u : unit_transversal(groups_[i], b)) pointed_.emplace_back(i, std::move(u));
}

KTriple TripleCatalog::triple(std::uint64_t index) const {
  const auto& [k0, unit] = pointed_.at(static_cast<std::size_t>(index / groups_.size()));
  return KTriple(groups_[k0], unit, groups_[static_cast<std::size_t>(index % groups_.size())]);
}

std::vector<KTriple> enumerate_triples(const CatalogBounds& b) {
  const TripleCatalog cat(b);
  std::vector<KTriple> out;
  out.reserve(static_cast<std::size_t>(cat.size()));
  for (std::uint64_t i = 0; i < cat.size(); ++i) out.push_back(cat.triple(i));
  return out;
}

}  // namespace kdual
