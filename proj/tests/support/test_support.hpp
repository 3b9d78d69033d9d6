#pragma once

// Generators and small independent oracles shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "kdual/brute_force.hpp"
#include "kdual/fga.hpp"
#include "kdual/int_matrix.hpp"

namespace kdual::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  bool coin() { return range(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(range(0, static_cast<long>(xs.size()) - 1))];
  }

  IntMatrix matrix(std::size_t rows, std::size_t cols, long lo, long hi) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = range(lo, hi);
    return m;
  }

  // Product of random elementary matrices, so det = +-1 by construction.
  IntMatrix unimodular(std::size_t n, int steps = 12) {
    IntMatrix m = IntMatrix::identity(n);
    if (n == 0) return m;
    for (int s = 0; s < steps; ++s) {
      const auto a = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
      const auto b = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
      if (a == b) {
        if (coin()) m.negate_row(a);
      } else {
        m.add_row_multiple(a, b, Int(range(-3, 3)));
      }
    }
    return m;
  }

  FgaGroup group(const std::vector<long>& primes, unsigned max_exp, unsigned max_factors, unsigned max_rank) {
    std::vector<PrimaryComponent> torsion;
    for (long p : primes) {
      std::vector<unsigned> exps;
      const long count = range(0, max_factors);
      for (long i = 0; i < count; ++i) exps.push_back(static_cast<unsigned>(range(1, max_exp)));
      std::sort(exps.begin(), exps.end());
      if (!exps.empty()) torsion.push_back({Int(p), exps});
    }
    return FgaGroup(static_cast<std::size_t>(range(0, max_rank)), torsion);
  }

  GroupElement element(const FgaGroup& g, long free_abs = 5) {
    std::vector<Int> t;
    for (const Int& m : g.moduli()) t.push_back(Int(range(0, m.get_si() - 1)));
    std::vector<Int> f;
    for (std::size_t i = 0; i < g.free_rank(); ++i) f.push_back(Int(range(-free_abs, free_abs)));
    return GroupElement(g, t, f);
  }

 private:
  std::mt19937_64 eng_;
};

// Diagonal of the Smith form from determinantal divisors: d_1 ... d_k is the
// gcd of all k x k minors. Only for small matrices.
inline Int minor_det(const IntMatrix& m, const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) {
  const std::size_t k = rs.size();
  if (k == 0) return 1;
  if (k == 1) return m(rs[0], cs[0]);
  Int total = 0;
  std::vector<std::size_t> rest(rs.begin() + 1, rs.end());
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::size_t> sub;
    for (std::size_t jj = 0; jj < k; ++jj)
      if (jj != j) sub.push_back(cs[jj]);
    const Int term = m(rs[0], cs[j]) * minor_det(m, rest, sub);
    total += (j % 2 == 0) ? term : Int(-term);
  }
  return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

inline std::vector<Int> determinantal_diagonal(const IntMatrix& m) {
  const std::size_t r = std::min(m.rows(), m.cols());
  std::vector<Int> out;
  Int prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    Int g = 0;
    for (const auto& rs : subsets(m.rows(), k))
      for (const auto& cs : subsets(m.cols(), k)) {
        const Int d = minor_det(m, rs, cs);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) {
      out.resize(r, Int(0));
      return out;
    }
    out.push_back(Int(g / prev));
    prev = g;
  }
  return out;
}

// Mixed-radix index of a torsion element.
inline std::uint64_t torsion_index(const GroupElement& e) {
  std::uint64_t out = 0;
  const auto mods = e.shape().moduli();
  for (std::size_t i = 0; i < mods.size(); ++i) out = out * mods[i].get_ui() + e.torsion_coords()[i].get_ui();
  return out;
}

// G / <elems> for finite G by counting: |Q[p^k]| = #{x : p^k x in S} / |S|.
inline FgaGroup quotient_by_counting(const FgaGroup& g, const std::vector<GroupElement>& elems) {
  const std::vector<GroupElement> all = all_elements(g);
  std::vector<bool> in_s(all.size(), false);
  in_s[0] = true;
  std::vector<GroupElement> members{GroupElement::zero(g)};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const GroupElement& e : elems) {
      const GroupElement y = members[i] + e;
      const std::uint64_t idx = torsion_index(y);
      if (!in_s[idx]) {
        in_s[idx] = true;
        members.push_back(y);
      }
    }
  }
  const std::uint64_t s_size = members.size();
  std::vector<PrimaryComponent> torsion;
  for (const Int& p : g.primes()) {
    std::vector<unsigned> exps;
    std::uint64_t prev = 1;
    Int pk = p;
    std::vector<std::uint64_t> at_least;
    for (unsigned k = 1;; ++k, pk *= p) {
      std::uint64_t killed = 0;
      for (const GroupElement& x : all)
        if (in_s[torsion_index(x.scaled(pk))]) ++killed;
      const std::uint64_t size = killed / s_size;
      if (size == prev) break;
      // Factors with exponent >= k: log_p(size / prev).
      unsigned c = 0;
      for (std::uint64_t q = size / prev; q > 1; q /= p.get_ui()) ++c;
      at_least.push_back(c);
      prev = size;
    }
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      const std::uint64_t next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (std::uint64_t j = 0; j < at_least[k] - next; ++j) exps.push_back(static_cast<unsigned>(k + 1));
    }
    std::sort(exps.begin(), exps.end());
    if (!exps.empty()) torsion.push_back({p, exps});
  }
  return FgaGroup(0, torsion);
}

inline FgaGroup quotient_by_counting(const FgaGroup& g, const GroupElement& e) {
  return quotient_by_counting(g, std::vector<GroupElement>{e});
}

inline Int gcd(const Int& a, const Int& b) {
  Int out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Tensor and Tor of finite cyclic decompositions by the gcd identity, with Z
// factors entered as modulus 0.
inline std::vector<Int> cyclic_pieces(const FgaGroup& g) {
  std::vector<Int> out(g.free_rank(), Int(0));
  for (const Int& m : g.moduli()) out.push_back(m);
  return out;
}

inline FgaGroup tensor_by_gcd(const FgaGroup& g, const FgaGroup& h) {
  FgaGroup out;
  for (const Int& a : cyclic_pieces(g))
    for (const Int& b : cyclic_pieces(h)) {
      const Int d = gcd(a, b);
      if (d == 0) out = direct_sum(out, FgaGroup::free(1));
      else if (d > 1) out = direct_sum(out, FgaGroup::cyclic(d));
    }
  return out;
}

inline FgaGroup tor_by_gcd(const FgaGroup& g, const FgaGroup& h) {
  FgaGroup out;
  for (const Int& a : cyclic_pieces(g))
    for (const Int& b : cyclic_pieces(h)) {
      if (a == 0 || b == 0) continue;
      const Int d = gcd(a, b);
      if (d > 1) out = direct_sum(out, FgaGroup::cyclic(d));
    }
  return out;
}

}  // namespace kdual::testing
