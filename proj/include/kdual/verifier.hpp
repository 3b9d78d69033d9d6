#pragma once

// Catalog-wide verification suites. Each suite checks one structural claim on
// every case within its bounds and reports the failing cases.

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "kdual/catalog.hpp"

namespace kdual {

struct Failure {
  std::string input;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t cases_checked = 0;
  /// The first failures in case order (at most kMaxRecorded).
  std::vector<Failure> failures;
  std::uint64_t failure_count = 0;
  std::chrono::duration<double> elapsed{0};

  static constexpr std::size_t kMaxRecorded = 20;

  bool passed() const noexcept { return failure_count == 0; }
  void fail(std::string input, std::string expected, std::string actual);
  /// Appends another report's counts and failures (shards are merged in order).
  void merge(const VerificationReport& other);
  std::string to_text() const;
};

/// Every accepted suite name, in the order `verify` runs them.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// The bounds a suite uses when none are given.
CatalogBounds default_bounds(const std::string& suite);

struct RunOptions {
  /// Worker threads for sharded suites; results are identical for any count.
  unsigned workers = 1;
};

/// Throws std::invalid_argument for an unknown suite name.
VerificationReport run_suite(const std::string& name, const CatalogBounds& b, const RunOptions& opts = {});

/// Runs several triple-catalog suites in a single pass over the catalog.
/// Suites that are not catalog sweeps are rejected with std::invalid_argument.
std::vector<VerificationReport> run_catalog_sweep(const std::vector<std::string>& names, const CatalogBounds& b,
                                                  const RunOptions& opts = {});

/// All 0 <= m, n, s, t <= bound with 2mn + m = 2st + s and n^2 + n + m^2 = t^2 + t + s^2
/// must have m = s and n = t.
VerificationReport check_lemma_ele(unsigned bound);

/// For p-group pairs within b satisfying (**), the sum G^f + G~^(F+1) + (G (x) G~)^2
/// determines the pair. For f >= 1 the same is checked over (*)-pairs.
/// Throws DomainError when f - F is odd.
VerificationReport check_cancellation(const Int& p, const CatalogBounds& b, unsigned f, unsigned F);

}  // namespace kdual
