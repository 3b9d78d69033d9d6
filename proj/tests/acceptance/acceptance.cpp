// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "kdual/brute_force.hpp"
#include "kdual/int_matrix.hpp"
#include "kdual/k_calculus.hpp"
#include "kdual/verifier.hpp"

using namespace kdual;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << detail << std::endl;
}

std::string summary(const VerificationReport& r) {
  std::ostringstream os;
  os << r.cases_checked << " cases, " << r.failure_count << " failures, " << r.elapsed.count() << " s";
  if (!r.failures.empty()) os << "; first: " << r.failures.front().input << " expected " << r.failures.front().expected
                              << " got " << r.failures.front().actual;
  return os.str();
}

KTriple cuntz(long n) {
  const FgaGroup zn = n == 1 ? FgaGroup() : FgaGroup::cyclic(n);
  return KTriple(zn, GroupElement(zn, std::vector<Int>(zn.factor_count(), 1), {}), FgaGroup());
}

KTriple matrices_over_infinite(long n) {
  return KTriple(FgaGroup::free(1), GroupElement(FgaGroup::free(1), {}, {n}), FgaGroup());
}

bool smith_ok(const IntMatrix& m) {
  const SmithForm f = snf(m);
  if (!(f.u * m * f.v == f.s) || !f.s.is_diagonal()) return false;
  const Int du = f.u.determinant(), dv = f.v.determinant();
  if (!(du == 1 || du == -1) || !(dv == 1 || dv == -1)) return false;
  const auto d = f.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size()) {
      if (d[i] == 0 && d[i + 1] != 0) return false;
      if (d[i] != 0 && d[i + 1] % d[i] != 0) return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  const RunOptions opts{std::max(1u, std::thread::hardware_concurrency())};

  {
    const auto start = Clock::now();
    int bad = 0;
    for (long n = 1; n <= 12; ++n) {
      if (!pointed_isomorphic(reciprocal(cuntz(n)), matrices_over_infinite(n))) ++bad;
      if (!pointed_isomorphic(reciprocal(matrices_over_infinite(n)), cuntz(n))) ++bad;
    }
    const double t = seconds_since(start);
    report(1, "Cuntz pairing n = 1..12", bad == 0 && t < 1.0,
           std::to_string(24 - bad) + "/24 directions, " + std::to_string(t) + " s (limit 1 s)");
  }

  // One pass over the default catalog serves criteria 2, 3, 5, 10 and the vn part of 12.
  const CatalogBounds catalog = default_bounds("involution");
  const auto sweep =
      run_catalog_sweep({"involution", "homotopy-equality", "torsion-flip", "closed-form-homotopy", "vn"}, catalog, opts);
  double sweep_seconds = 0;
  for (const auto& r : sweep) sweep_seconds = std::max(sweep_seconds, r.elapsed.count());

  report(2, "involution and non-self-duality over the default catalog",
         sweep[0].passed() && sweep_seconds <= 300.0, summary(sweep[0]) + " (shared sweep, limit 300 s)");
  report(3, "homotopy equality with the reciprocal", sweep[1].passed(), summary(sweep[1]));

  {
    const VerificationReport r = run_suite("dichotomy", default_bounds("dichotomy"), opts);
    report(4, "dichotomy on equal homotopy profiles", r.passed() && r.elapsed.count() <= 900.0,
           summary(r) + " (limit 900 s)");
  }

  report(5, "torsion flip of the unit class", sweep[2].passed(), summary(sweep[2]));

  {
    const VerificationReport r = run_suite("kmc-oracle", default_bounds("kmc-oracle"), opts);
    report(6, "aut_sends against exhaustive orbits, order <= 64, p in {2,3,5}", r.passed() && r.elapsed.count() <= 600.0,
           summary(r) + " (limit 600 s)");
  }

  {
    const VerificationReport r = run_suite("closed-forms", default_bounds("closed-forms"), opts);
    report(7, "normal-form closed forms against SNF quotients", r.passed() && r.elapsed.count() <= 300.0,
           summary(r) + " (limit 300 s)");
  }

  {
    const VerificationReport r = check_lemma_ele(30);
    const bool scanned = r.cases_checked == 31ull * 31 * 31 * 31;
    report(8, "quadratic cancellation lemma to bound 30", r.passed() && scanned && r.elapsed.count() < 10.0,
           summary(r) + " (limit 10 s)");
  }

  {
    const VerificationReport r = run_suite("cancellation", default_bounds("cancellation"), opts);
    report(9, "cancellation of displayed sums, 2-groups of order <= 16", r.passed() && r.elapsed.count() <= 600.0,
           summary(r) + " (limit 600 s)");
  }

  report(10, "closed-form homotopy equals the Kunneth path", sweep[3].passed(), summary(sweep[3]));

  {
    const auto start = Clock::now();
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> entry(-99, 99);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
      IntMatrix m(dim(rng), dim(rng));
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
      if (!smith_ok(m)) ++bad;
    }
    const VerificationReport k = run_suite("kunneth-oracle", default_bounds("kunneth-oracle"), opts);
    const double t = seconds_since(start);
    report(11, "SNF identities on 10^4 random matrices; tensor and Tor against oracles", bad == 0 && k.passed() && t <= 120.0,
           std::to_string(bad) + " bad matrices; " + summary(k) + "; total " + std::to_string(t) + " s (limit 120 s)");
  }

  {
    int bad = 0;
    if (!(aut_homotopy(matrices_over_infinite(1)) == HomotopyProfile{FgaGroup(), FgaGroup()})) ++bad;
    for (long n = 1; n <= 12; ++n) {
      const HomotopyProfile expected{n == 1 ? FgaGroup() : FgaGroup::cyclic(n), FgaGroup()};
      if (!(aut_homotopy(cuntz(n)) == expected)) ++bad;
    }
    report(12, "spot homotopy values and vn on every catalog triple", bad == 0 && sweep[4].passed(),
           std::to_string(13 - bad) + "/13 spot values; " + summary(sweep[4]));
  }

  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
