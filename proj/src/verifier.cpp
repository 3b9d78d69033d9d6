#include "kdual/verifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kdual/brute_force.hpp"
#include "kdual/p_invariants.hpp"

namespace kdual {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kCatalogSuites = {"involution", "homotopy-equality", "torsion-flip",
                                                 "closed-form-homotopy", "vn"};

std::string pair_text(const KPair& p) { return "(" + p.k0.to_string() + ", " + p.k1.to_string() + ")"; }

std::string profile_text(const HomotopyProfile& h) {
  return "(pi_odd=" + h.pi_odd.to_string() + ", pi_even=" + h.pi_even.to_string() + ")";
}

// Splits [0, n) into contiguous shards, runs `body(begin, end, report)` on each
// and merges the reports in shard order, so the result does not depend on the
// worker count.
template <class Body>
std::vector<VerificationReport> sharded(std::uint64_t n, unsigned workers, std::size_t report_count, Body body) {
  workers = std::max(1u, workers);
  std::vector<std::vector<VerificationReport>> parts(workers, std::vector<VerificationReport>(report_count));
  auto run = [&](unsigned w) {
    const std::uint64_t begin = n * w / workers;
    const std::uint64_t end = n * (w + 1) / workers;
    body(begin, end, parts[w]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  std::vector<VerificationReport> out(report_count);
  for (const auto& part : parts)
    for (std::size_t i = 0; i < report_count; ++i) out[i].merge(part[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Triple-catalog suites

void check_triple(const KTriple& t, const std::vector<std::string>& names, std::vector<VerificationReport>& reps) {
  std::optional<KTriple> r;
  auto rec = [&]() -> const KTriple& {
    if (!r) r = reciprocal(t);
    return *r;
  };
  for (std::size_t s = 0; s < names.size(); ++s) {
    const std::string& name = names[s];
    VerificationReport& rep = reps[s];
    ++rep.cases_checked;
    if (name == "involution") {
      const KTriple rr = reciprocal(rec());
      if (!pointed_isomorphic(rr, t)) rep.fail(t.to_string(), t.to_string(), rr.to_string());
      const ClassifyVerdict v = classify_triples(t, rec());
      if (v != ClassifyVerdict::Reciprocal)
        rep.fail("classify " + t.to_string() + " vs " + rec().to_string(), "RECIPROCAL", to_string(v));
    } else if (name == "homotopy-equality") {
      const HomotopyProfile a = aut_homotopy(t);
      const HomotopyProfile b = aut_homotopy(rec());
      if (!(a == b)) rep.fail(t.to_string() + " vs " + rec().to_string(), profile_text(a), profile_text(b));
    } else if (name == "torsion-flip") {
      if (rec().k0().is_trivial()) continue;
      const bool a_torsion = t.unit().has_finite_order();
      const bool b_torsion = rec().unit().has_finite_order();
      if (a_torsion == b_torsion)
        rep.fail(t.to_string() + " -> " + rec().to_string(), a_torsion ? "non-torsion unit" : "torsion unit",
                 b_torsion ? "torsion unit" : "non-torsion unit");
    } else if (name == "closed-form-homotopy") {
      const HomotopyProfile a = aut_homotopy(t);
      const HomotopyProfile b = aut_homotopy_closed_form(t);
      if (!(a == b)) rep.fail(t.to_string(), profile_text(a), profile_text(b));
    } else if (name == "vn") {
      if (!check_vn(t)) rep.fail(t.to_string(), "(**) at every prime", "violated");
      const KPair c = cone_k(t);
      const long F0 = static_cast<long>(t.k0().free_rank()), F1 = static_cast<long>(t.k1().free_rank());
      const long f0 = static_cast<long>(c.k0.free_rank()), f1 = static_cast<long>(c.k1.free_rank());
      const bool torsion = t.unit().has_finite_order();
      const long a = f0 - F1, b = F0 - f1;
      if (F1 - f0 + 1 - F0 + f1 != 0 || a != (torsion ? 1 : 0) || b != (torsion ? 0 : 1))
        rep.fail("ranks of " + t.to_string() + " and cone " + pair_text(c), torsion ? "(1,0)" : "(0,1)",
                 "(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
}

std::uint64_t profile_hash(const HomotopyProfile& h) { return HomotopyProfileHash{}(h); }

VerificationReport dichotomy(const CatalogBounds& b, const RunOptions& opts) {
  const TripleCatalog cat(b);
  const std::uint64_t n = cat.size();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed(static_cast<std::size_t>(n));
  const unsigned workers = std::max(1u, opts.workers);
  auto fill = [&](unsigned w) {
    for (std::uint64_t i = n * w / workers; i < n * (w + 1) / workers; ++i)
      keyed[static_cast<std::size_t>(i)] = {profile_hash(aut_homotopy(cat.triple(i))), i};
  };
  if (workers == 1) {
    fill(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(fill, w);
    for (auto& t : threads) t.join();
  }
  std::sort(keyed.begin(), keyed.end());

  VerificationReport rep;
  for (std::size_t lo = 0; lo < keyed.size();) {
    std::size_t hi = lo + 1;
    while (hi < keyed.size() && keyed[hi].first == keyed[lo].first) ++hi;
    if (hi - lo > 1) {
      // Equal hashes: split into exactly equal profiles, then compare pairwise.
      std::map<HomotopyProfile, std::vector<std::uint64_t>> exact;
      for (std::size_t k = lo; k < hi; ++k) exact[aut_homotopy(cat.triple(keyed[k].second))].push_back(keyed[k].second);
      for (const auto& [profile, members] : exact) {
        for (std::size_t i = 0; i < members.size(); ++i) {
          const KTriple a = cat.triple(members[i]);
          for (std::size_t j = i + 1; j < members.size(); ++j) {
            const KTriple c = cat.triple(members[j]);
            ++rep.cases_checked;
            const ClassifyVerdict v = classify_triples(a, c);
            if (v == ClassifyVerdict::Distinct)
              rep.fail(a.to_string() + " vs " + c.to_string() + " with profile " + profile_text(profile),
                       "ISOMORPHIC or RECIPROCAL", to_string(v));
          }
        }
      }
    }
    lo = hi;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Group-level suites

VerificationReport kmc_oracle(const CatalogBounds& b) {
  VerificationReport rep;
  CatalogBounds finite = b;
  finite.max_free_rank = 0;
  for (const FgaGroup& g : enumerate_groups(finite)) {
    const std::vector<GroupElement> elems = all_elements(g);
    const std::vector<std::size_t> orbit = automorphism_orbits(g);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = 0; j < elems.size(); ++j) {
        ++rep.cases_checked;
        const bool oracle = orbit[i] == orbit[j];
        if (aut_sends(g, elems[i], elems[j]) != oracle)
          rep.fail(g.to_string() + ": " + elems[i].to_string() + " -> " + elems[j].to_string(),
                   oracle ? "automorphism exists" : "no automorphism", oracle ? "aut_sends=false" : "aut_sends=true");
      }
    }
  }
  return rep;
}

// The witness must be a bijective homomorphism carrying `from` to `to`.
bool witness_ok(const FgaGroup& g, const GeneratorImages& w, const GroupElement& from) {
  std::vector<GroupElement> images;
  for (const auto& img : w.images) {
    std::vector<Int> t(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(g.factor_count()));
    std::vector<Int> f(img.begin() + static_cast<std::ptrdiff_t>(g.factor_count()), img.end());
    images.emplace_back(g, std::move(t), std::move(f));
  }
  std::vector<Int> nt(w.normalized.begin(), w.normalized.begin() + static_cast<std::ptrdiff_t>(g.factor_count()));
  std::vector<Int> nf(w.normalized.begin() + static_cast<std::ptrdiff_t>(g.factor_count()), w.normalized.end());
  const GroupElement to(g, std::move(nt), std::move(nf));
  if (!(apply_images(images, from) == to)) return false;
  // Images killed by their generator's order define an endomorphism; a
  // surjective endomorphism of a finitely generated group is bijective.
  const auto factors = g.factors();
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (!images[i].scaled(factors[i].modulus).is_zero()) return false;
  return quotient_by(g, images).is_trivial();
}

VerificationReport closed_forms(const CatalogBounds& b) {
  VerificationReport rep;
  for (const Int& p : b.primes) {
    CatalogBounds only = b;
    only.primes = {p};
    only.max_free_rank = 0;
    for (const FgaGroup& g : enumerate_groups(only)) {
      const FgaGroup gz = direct_sum(g, FgaGroup::free(1));
      for (const GroupElement& e : all_elements(g)) {
        if (!e.is_zero()) {
          ++rep.cases_checked;
          const std::string in = g.to_string() + " " + e.to_string();
          const NormalFormData d = g1_normal_form(g, e, p);
          const FgaGroup closed = g2_quotient_closed_form(d);
          const FgaGroup snf = quotient_by(g, e);
          if (!d.invariants_hold()) rep.fail(in, "normal-form inequalities", "violated");
          if (d.exponents() != invariant_I(g, p).exponents) rep.fail(in, "exponents of G", "mismatch");
          if (!(closed == snf)) rep.fail(in, snf.to_string(), closed.to_string());
          if (!satisfies_star_star(closed, g, p)) rep.fail(in, "(G/<g>, G) satisfies (**)", "violated");
          if (!d.witness || !witness_ok(g, *d.witness, e)) rep.fail(in, "valid normalizing automorphism", "invalid");
        }
        for (unsigned l = 0; l <= b.max_augment_exponent; ++l) {
          ++rep.cases_checked;
          const std::string in = g.to_string() + " (" + e.to_string() + ", p^" + std::to_string(l) + ")";
          const NormalFormData d = g3_normal_form(g, e, l, p);
          const AugmentedQuotient aq = g4_quotient_closed_form(d);
          std::vector<Int> free{ipow(p, l)};
          const GroupElement ez(gz, e.torsion_coords(), free);
          const FgaGroup snf = quotient_by(gz, ez);
          if (!d.invariants_hold()) rep.fail(in, "augmented normal-form inequalities", "violated");
          if (!(aq.q == snf)) rep.fail(in, snf.to_string(), aq.q.to_string());
          const FgaGroup back = quotient_by(aq.q, aq.t_tilde);
          if (!(back == g)) rep.fail(in + " q/<t~>", g.to_string(), back.to_string());
          if (!satisfies_star_star(g, aq.q, p)) rep.fail(in, "(G, q) satisfies (**)", "violated");
          if (!d.witness || !witness_ok(gz, *d.witness, ez)) rep.fail(in, "valid normalizing automorphism", "invalid");
        }
      }
    }
  }
  return rep;
}

KPair kunneth_by_oracle(const KPair& a, const KPair& b) {
  KPair out;
  out.k0 = direct_sum(direct_sum(tensor_oracle(a.k0, b.k0), tensor_oracle(a.k1, b.k1)),
                      direct_sum(tor_oracle(a.k0, b.k1), tor_oracle(a.k1, b.k0)));
  out.k1 = direct_sum(direct_sum(tensor_oracle(a.k0, b.k1), tensor_oracle(a.k1, b.k0)),
                      direct_sum(tor_oracle(a.k0, b.k0), tor_oracle(a.k1, b.k1)));
  return out;
}

VerificationReport kunneth_oracle(const CatalogBounds& b) {
  VerificationReport rep;
  const std::vector<FgaGroup> groups = enumerate_groups(b);
  for (const FgaGroup& g : groups) {
    for (const FgaGroup& h : groups) {
      ++rep.cases_checked;
      const std::string in = g.to_string() + " , " + h.to_string();
      const FgaGroup t = tensor(g, h), to = tensor_oracle(g, h);
      if (!(t == to)) rep.fail("tensor " + in, to.to_string(), t.to_string());
      const FgaGroup r = tor(g, h), ro = tor_oracle(g, h);
      if (!(r == ro)) rep.fail("tor " + in, ro.to_string(), r.to_string());
    }
  }
  // Graded products over the small groups (torsion order <= 4).
  std::vector<KPair> pairs;
  for (const FgaGroup& g : groups)
    for (const FgaGroup& h : groups)
      if (g.torsion_order() <= 4 && h.torsion_order() <= 4 && g.free_rank() <= 1 && h.free_rank() <= 1)
        pairs.push_back({g, h});
  for (const KPair& a : pairs) {
    for (const KPair& c : pairs) {
      ++rep.cases_checked;
      const KPair k = kunneth_pair(a, c), ko = kunneth_by_oracle(a, c);
      if (!(k == ko)) rep.fail("kunneth " + pair_text(a) + " x " + pair_text(c), pair_text(ko), pair_text(k));
    }
  }
  return rep;
}

VerificationReport cancellation_all(const CatalogBounds& b) {
  VerificationReport rep;
  const std::pair<unsigned, unsigned> cases[] = {{0, 0}, {1, 1}, {2, 0}, {3, 1}};
  for (const Int& p : b.primes) {
    for (auto [f, F] : cases) {
      const VerificationReport part = check_cancellation(p, b, f, F);
      rep.merge(part);
    }
  }
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------

void VerificationReport::fail(std::string input, std::string expected, std::string actual) {
  ++failure_count;
  if (failures.size() < kMaxRecorded) failures.push_back({std::move(input), std::move(expected), std::move(actual)});
}

void VerificationReport::merge(const VerificationReport& other) {
  if (suite.empty()) suite = other.suite;
  cases_checked += other.cases_checked;
  failure_count += other.failure_count;
  for (const auto& f : other.failures)
    if (failures.size() < kMaxRecorded) failures.push_back(f);
  elapsed += other.elapsed;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << suite << ": " << (passed() ? "PASS" : "FAIL") << " (" << cases_checked << " cases, " << failure_count
     << " failures, " << elapsed.count() << " s)\n";
  for (const auto& f : failures)
    os << "  input:    " << f.input << "\n  expected: " << f.expected << "\n  actual:   " << f.actual << "\n";
  if (failure_count > failures.size()) os << "  ... " << failure_count - failures.size() << " more\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "involution", "dichotomy",     "torsion-flip", "homotopy-equality",    "kmc-oracle", "closed-forms",
      "vn",         "kunneth-oracle", "closed-form-homotopy", "lemma-ele", "cancellation"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CatalogBounds default_bounds(const std::string& suite) {
  CatalogBounds b;
  if (suite == "kmc-oracle" || suite == "kunneth-oracle") {
    b.primes = {2, 3, 5};
    b.max_exponent = 6;
    b.max_factors_per_prime = 6;
    b.max_free_rank = suite == "kunneth-oracle" ? 1 : 0;
    b.max_order = 64;
  } else if (suite == "closed-forms") {
    b.max_exponent = 5;
    b.max_factors_per_prime = 6;
    b.max_free_rank = 0;
    b.max_log_order = 6;
    b.max_augment_exponent = 4;
  } else if (suite == "cancellation") {
    b.primes = {2};
    b.max_exponent = 4;
    b.max_factors_per_prime = 4;
    b.max_free_rank = 0;
    b.max_order = 16;
  }
  return b;
}

std::vector<VerificationReport> run_catalog_sweep(const std::vector<std::string>& names, const CatalogBounds& b,
                                                  const RunOptions& opts) {
  for (const auto& n : names)
    if (std::find(kCatalogSuites.begin(), kCatalogSuites.end(), n) == kCatalogSuites.end())
      throw std::invalid_argument("not a catalog sweep suite: " + n);
  const auto start = Clock::now();
  const TripleCatalog cat(b);
  std::vector<VerificationReport> reps =
      sharded(cat.size(), opts.workers, names.size(),
              [&](std::uint64_t begin, std::uint64_t end, std::vector<VerificationReport>& out) {
                for (std::uint64_t i = begin; i < end; ++i) check_triple(cat.triple(i), names, out);
              });
  const auto elapsed = Clock::now() - start;
  for (std::size_t i = 0; i < names.size(); ++i) {
    reps[i].suite = names[i];
    reps[i].elapsed = elapsed;
  }
  return reps;
}

VerificationReport run_suite(const std::string& name, const CatalogBounds& b, const RunOptions& opts) {
  if (!is_suite_name(name)) throw std::invalid_argument("unknown suite: " + name);
  if (std::find(kCatalogSuites.begin(), kCatalogSuites.end(), name) != kCatalogSuites.end())
    return run_catalog_sweep({name}, b, opts).front();

  const auto start = Clock::now();
  VerificationReport rep;
  if (name == "dichotomy") rep = dichotomy(b, opts);
  else if (name == "kmc-oracle") rep = kmc_oracle(b);
  else if (name == "closed-forms") rep = closed_forms(b);
  else if (name == "kunneth-oracle") rep = kunneth_oracle(b);
  else if (name == "lemma-ele") rep = check_lemma_ele(b.ele_bound);
  else if (name == "cancellation") rep = cancellation_all(b);
  rep.suite = name;
  rep.elapsed = Clock::now() - start;
  return rep;
}

VerificationReport check_lemma_ele(unsigned bound) {
  const auto start = Clock::now();
  VerificationReport rep;
  rep.suite = "lemma-ele";
  const long top = static_cast<long>(bound);
  for (long m = 0; m <= top; ++m)
    for (long n = 0; n <= top; ++n)
      for (long s = 0; s <= top; ++s)
        for (long t = 0; t <= top; ++t) {
          ++rep.cases_checked;
          if (2 * m * n + m != 2 * s * t + s || n * n + n + m * m != t * t + t + s * s) continue;
          if (m != s || n != t) {
            std::ostringstream os;
            os << "m=" << m << " n=" << n << " s=" << s << " t=" << t;
            rep.fail(os.str(), "m=s and n=t", "differ");
          }
        }
  rep.elapsed = Clock::now() - start;
  return rep;
}

VerificationReport check_cancellation(const Int& p, const CatalogBounds& b, unsigned f, unsigned F) {
  if ((f + F) % 2 != 0) throw DomainError("check_cancellation: f - F must be even");
  const auto start = Clock::now();
  VerificationReport rep;
  rep.suite = "cancellation";
  CatalogBounds only = b;
  only.primes = {p};
  only.max_free_rank = 0;
  const std::vector<FgaGroup> groups = enumerate_groups(only);

  auto display = [&](const FgaGroup& g, const FgaGroup& gt) {
    return direct_sum(direct_sum(direct_power(g, f), direct_power(gt, F + 1)), direct_power(tensor(g, gt), 2));
  };
  // (**)-pairs always; (*)-pairs as well once f >= 1.
  for (int pass = 0; pass < (f >= 1 ? 2 : 1); ++pass) {
    const bool star_only = pass == 1;
    std::map<FgaGroup, std::pair<FgaGroup, FgaGroup>> seen;
    for (const FgaGroup& g : groups) {
      for (const FgaGroup& gt : groups) {
        const bool admissible = star_only ? satisfies_star(g, gt, p) : satisfies_star_star(g, gt, p);
        if (!admissible) continue;
        ++rep.cases_checked;
        const FgaGroup sum = display(g, gt);
        auto [it, inserted] = seen.try_emplace(sum, g, gt);
        if (!inserted)
          rep.fail("f=" + std::to_string(f) + " F=" + std::to_string(F) + (star_only ? " (*)" : " (**)") + " pairs (" +
                       it->second.first.to_string() + ", " + it->second.second.to_string() + ") and (" +
                       g.to_string() + ", " + gt.to_string() + ")",
                   "distinct sums", "both give " + sum.to_string());
      }
    }
  }
  rep.elapsed = Clock::now() - start;
  return rep;
}

}  // namespace kdual
