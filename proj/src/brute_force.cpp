#include "kdual/brute_force.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace kdual {

namespace {

constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 20;

// Finite group Z/n_1 + ... + Z/n_m with elements numbered in mixed radix.
class Table {
 public:
  explicit Table(const FgaGroup& t) : shape_(t) {
    size_ = 1;
    for (const auto& f : t.factors()) {
      if (!f.modulus.fits_ulong_p() || size_ * f.modulus.get_ui() > kMaxTableSize)
        throw DomainError("group too large for exhaustive search: " + t.to_string());
      mod_.push_back(f.modulus.get_ui());
      prime_.push_back(f.prime.get_ui());
      size_ *= mod_.back();
    }
    coords_.resize(size_ * mod_.size());
    for (std::uint64_t x = 0; x < size_; ++x) {
      std::uint64_t rest = x;
      for (std::size_t i = mod_.size(); i-- > 0;) {
        coords_[x * mod_.size() + i] = rest % mod_[i];
        rest /= mod_[i];
      }
    }
  }

  std::uint64_t size() const { return size_; }
  std::size_t rank() const { return mod_.size(); }
  std::uint64_t modulus(std::size_t i) const { return mod_[i]; }
  std::uint64_t prime(std::size_t i) const { return prime_[i]; }
  std::uint64_t coord(std::uint64_t x, std::size_t i) const { return coords_[x * mod_.size() + i]; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < mod_.size(); ++i) out = out * mod_[i] + (coord(a, i) + coord(b, i)) % mod_[i];
    return out;
  }
  std::uint64_t times(std::uint64_t k, std::uint64_t a) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < mod_.size(); ++i) out = out * mod_[i] + (k % mod_[i]) * coord(a, i) % mod_[i];
    return out;
  }
  std::uint64_t generator(std::size_t i) const {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < mod_.size(); ++j) out = out * mod_[j] + (j == i ? 1 : 0);
    return out;
  }
  std::uint64_t index_of(const std::vector<Int>& torsion) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < mod_.size(); ++i) out = out * mod_[i] + torsion[i].get_ui();
    return out;
  }
  GroupElement element(std::uint64_t x) const {
    std::vector<Int> c(mod_.size());
    for (std::size_t i = 0; i < mod_.size(); ++i) c[i] = static_cast<unsigned long>(coord(x, i));
    return GroupElement(shape_, std::move(c), {});
  }

 private:
  FgaGroup shape_;
  std::vector<std::uint64_t> mod_;
  std::vector<std::uint64_t> prime_;
  std::uint64_t size_ = 1;
  std::vector<std::uint64_t> coords_;
};

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, std::uint64_t x) { return (b[x >> 6] >> (x & 63)) & 1; }
void set_bit(Bits& b, std::uint64_t x) { b[x >> 6] |= std::uint64_t{1} << (x & 63); }

// Subgroup generated by S and h, where h has order n modulo S.
Bits extend(const Table& t, const Bits& s, std::uint64_t h, std::uint64_t n) {
  Bits out(s.size(), 0);
  std::vector<std::uint64_t> members;
  for (std::uint64_t y = 0; y < t.size(); ++y)
    if (test_bit(s, y)) members.push_back(y);
  std::uint64_t shift = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    for (std::uint64_t y : members) set_bit(out, t.add(y, shift));
    shift = t.add(shift, h);
  }
  return out;
}

// Candidate images of generator i given the subgroup S spanned by earlier
// images: n_i h = 0 and (n_i / p) h outside S, which keeps the map injective.
std::vector<std::uint64_t> admissible_images(const Table& t, const Bits& s, std::size_t i) {
  const std::uint64_t n = t.modulus(i);
  const std::uint64_t below = n / t.prime(i);
  std::vector<std::uint64_t> out;
  for (std::uint64_t h = 0; h < t.size(); ++h)
    if (t.times(n, h) == 0 && !test_bit(s, t.times(below, h))) out.push_back(h);
  return out;
}

struct OrbitSearch {
  struct Node {
    std::uint64_t sum;
    Bits span;
    std::size_t parent;
    std::uint64_t image;
  };
  std::vector<std::vector<Node>> layers;
};

// Layered search over (partial image of e, span of chosen images). Two
// prefixes reaching the same state have identical completions, so merging
// them keeps the reachable final sums equal to the full orbit of e.
OrbitSearch orbit_search(const Table& t, std::uint64_t e) {
  OrbitSearch out;
  Bits zero((t.size() + 63) / 64, 0);
  set_bit(zero, 0);
  out.layers.push_back({{0, zero, 0, 0}});
  for (std::size_t i = 0; i < t.rank(); ++i) {
    const std::uint64_t c = t.coord(e, i);
    std::map<std::pair<std::uint64_t, Bits>, std::size_t> seen;
    std::vector<OrbitSearch::Node> next;
    const auto& layer = out.layers.back();
    for (std::size_t id = 0; id < layer.size(); ++id) {
      for (std::uint64_t h : admissible_images(t, layer[id].span, i)) {
        Bits span = extend(t, layer[id].span, h, t.modulus(i));
        const std::uint64_t sum = t.add(layer[id].sum, t.times(c, h));
        auto [it, inserted] = seen.try_emplace({sum, span}, next.size());
        if (inserted) next.push_back({sum, std::move(span), id, h});
      }
    }
    out.layers.push_back(std::move(next));
  }
  return out;
}

std::vector<std::uint64_t> orbit_witness(const OrbitSearch& s, std::size_t final_id) {
  std::vector<std::uint64_t> images(s.layers.size() - 1);
  std::size_t id = final_id;
  for (std::size_t layer = s.layers.size() - 1; layer > 0; --layer) {
    images[layer - 1] = s.layers[layer][id].image;
    id = s.layers[layer][id].parent;
  }
  return images;
}

// Automorphism images of the torsion generators carrying t1 into t2 + cT.
std::optional<std::vector<std::uint64_t>> torsion_part(const Table& t, std::uint64_t t1, std::uint64_t t2,
                                                       std::uint64_t c, std::uint64_t* landed) {
  std::vector<bool> coset(t.size(), false);
  for (std::uint64_t y = 0; y < t.size(); ++y) coset[t.add(t2, t.times(c, y))] = true;
  const OrbitSearch s = orbit_search(t, t1);
  const auto& last = s.layers.back();
  for (std::size_t id = 0; id < last.size(); ++id) {
    if (!coset[last[id].sum]) continue;
    *landed = last[id].sum;
    return orbit_witness(s, id);
  }
  return std::nullopt;
}

// Rows of D with D v1 = v2, entries bounded, |det D| = 1.
std::optional<IntMatrix> free_part(const std::vector<Int>& v1, const std::vector<Int>& v2, long bound) {
  const std::size_t f = v1.size();
  IntMatrix d(f, f);
  std::function<bool(std::size_t)> rows = [&](std::size_t r) -> bool {
    if (r == f) {
      const Int det = d.determinant();
      return det == 1 || det == -1;
    }
    std::vector<long> row(f);
    std::function<bool(std::size_t)> entries = [&](std::size_t j) -> bool {
      if (j == f) {
        Int dot = 0;
        for (std::size_t k = 0; k < f; ++k) dot += Int(row[k]) * v1[k];
        if (dot != v2[r]) return false;
        for (std::size_t k = 0; k < f; ++k) d(r, k) = row[k];
        return rows(r + 1);
      }
      for (long x = -bound; x <= bound; ++x) {
        row[j] = x;
        if (entries(j + 1)) return true;
      }
      return false;
    };
    return entries(0);
  };
  if (rows(0)) return d;
  return std::nullopt;
}

}  // namespace

std::vector<GroupElement> all_elements(const FgaGroup& g) {
  if (!g.is_finite()) throw DomainError("all_elements: group is infinite");
  Table t(g);
  std::vector<GroupElement> out;
  out.reserve(t.size());
  for (std::uint64_t x = 0; x < t.size(); ++x) out.push_back(t.element(x));
  return out;
}

GroupElement apply_images(const std::vector<GroupElement>& images, const GroupElement& x) {
  const FgaGroup& g = x.shape();
  if (images.size() != g.factor_count() + g.free_rank()) throw DomainError("apply_images: wrong number of images");
  GroupElement out = GroupElement::zero(images.empty() ? g : images.front().shape());
  std::size_t i = 0;
  for (const Int& c : x.torsion_coords()) out = out + images[i++].scaled(c);
  for (const Int& c : x.free_coords()) out = out + images[i++].scaled(c);
  return out;
}

AutSearchResult brute_force_aut_search(const FgaGroup& g, const GroupElement& e1, const GroupElement& e2,
                                       unsigned coeff_bound) {
  if (!(e1.shape() == g) || !(e2.shape() == g)) throw DomainError("brute_force_aut: element does not belong to the group");
  if (!g.is_finite() && coeff_bound == 0) throw DomainError("brute_force_aut: infinite group needs coeff_bound > 0");

  const FgaGroup tg = g.torsion_subgroup();
  const Table t(tg);
  const std::vector<Int>& v1 = e1.free_coords();
  const std::vector<Int>& v2 = e2.free_coords();
  const Int c = e1.free_content();
  const std::uint64_t c_mod = t.size() == 0 ? 0 : Int(c % Int(static_cast<unsigned long>(t.size()))).get_ui();

  const std::uint64_t t1 = t.index_of(e1.torsion_coords());
  const std::uint64_t t2 = t.index_of(e2.torsion_coords());
  std::uint64_t landed = 0;
  auto alpha = torsion_part(t, t1, t2, c_mod, &landed);
  if (!alpha) return {AutSearchOutcome::Exhausted, {}};

  std::optional<IntMatrix> d = IntMatrix::identity(g.free_rank());
  if (g.free_rank() > 0) {
    if (c != e2.free_content()) return {AutSearchOutcome::Exhausted, {}};
    d = free_part(v1, v2, static_cast<long>(coeff_bound));
    if (!d) return {AutSearchOutcome::Inconclusive, {}};
  }

  // Free generators pick up torsion w_j y with w . v1 = c and c y = t2 - alpha(t1).
  std::vector<Int> w(g.free_rank());
  GroupElement y = GroupElement::zero(g);
  if (g.free_rank() > 0 && c != 0) {
    Int acc = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      Int next, s, u;
      mpz_gcdext(next.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), acc.get_mpz_t(), v1[j].get_mpz_t());
      for (std::size_t k = 0; k < j; ++k) w[k] *= s;
      w[j] = u;
      acc = next;
    }
    const std::uint64_t diff = t.add(t2, t.times(t.size() - 1, landed));
    for (std::uint64_t yi = 0; yi < t.size(); ++yi) {
      if (t.times(c_mod, yi) == diff) {
        const GroupElement ty = t.element(yi);
        y = GroupElement(g, ty.torsion_coords(), std::vector<Int>(g.free_rank()));
        break;
      }
    }
  }

  AutSearchResult res{AutSearchOutcome::Found, {}};
  for (std::uint64_t img : *alpha)
    res.images.push_back(GroupElement(g, t.element(img).torsion_coords(), std::vector<Int>(g.free_rank())));
  for (std::size_t j = 0; j < g.free_rank(); ++j) {
    std::vector<Int> col(g.free_rank());
    for (std::size_t r = 0; r < g.free_rank(); ++r) col[r] = (*d)(r, j);
    res.images.push_back(GroupElement(g, y.scaled(w[j]).torsion_coords(), std::move(col)));
  }
  if (!(apply_images(res.images, e1) == e2)) throw std::logic_error("brute_force_aut: witness does not map e1 to e2");
  return res;
}

bool brute_force_aut(const FgaGroup& g, const GroupElement& e1, const GroupElement& e2, unsigned coeff_bound) {
  return brute_force_aut_search(g, e1, e2, coeff_bound).found();
}

std::vector<std::size_t> automorphism_orbits(const FgaGroup& g) {
  if (!g.is_finite()) throw DomainError("automorphism_orbits: group is infinite");
  const Table t(g);
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> orbit(t.size(), kUnset);
  std::size_t next = 0;
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    if (orbit[x] != kUnset) continue;
    const OrbitSearch s = orbit_search(t, x);
    for (const auto& node : s.layers.back()) orbit[node.sum] = next;
    ++next;
  }
  return orbit;
}

std::uint64_t count_automorphisms_enumerated(const FgaGroup& g) {
  if (!g.is_finite()) throw DomainError("count_automorphisms_enumerated: group is infinite");
  const Table t(g);
  Bits zero((t.size() + 63) / 64, 0);
  set_bit(zero, 0);
  std::function<std::uint64_t(std::size_t, const Bits&)> count = [&](std::size_t i, const Bits& span) -> std::uint64_t {
    if (i == t.rank()) return 1;
    const std::vector<std::uint64_t> images = admissible_images(t, span, i);
    if (i + 1 == t.rank()) return images.size();
    std::uint64_t total = 0;
    for (std::uint64_t h : images) total += count(i + 1, extend(t, span, h, t.modulus(i)));
    return total;
  };
  return count(0, zero);
}

Int automorphism_count_formula(const FgaGroup& g) {
  if (!g.is_finite()) throw DomainError("automorphism_count_formula: group is infinite");
  Int total = 1;
  for (const auto& comp : g.torsion()) {
    const Int& p = comp.prime;
    const auto& e = comp.exponents;
    const std::size_t n = e.size();
    for (std::size_t k = 1; k <= n; ++k) {
      const unsigned ek = e[k - 1];
      std::size_t d = 0;
      std::size_t c = n + 1;
      for (std::size_t l = 1; l <= n; ++l) {
        if (e[l - 1] <= ek) d = l;
        if (e[l - 1] >= ek) c = std::min(c, l);
      }
      total *= ipow(p, static_cast<unsigned>(d)) - ipow(p, static_cast<unsigned>(k - 1));
      total *= ipow(ipow(p, ek), static_cast<unsigned>(n - d));
      total *= ipow(ipow(p, ek - 1), static_cast<unsigned>(n - c + 1));
    }
  }
  return total;
}

FgaGroup tensor_oracle(const FgaGroup& g, const FgaGroup& h) {
  const IntMatrix rg = presentation(g);
  const IntMatrix rh = presentation(h);
  const std::size_t a = g.factor_count() + g.free_rank();
  const std::size_t b = h.factor_count() + h.free_rank();
  IntMatrix rel(0, a * b);
  std::vector<Int> row(a * b);
  for (std::size_t r = 0; r < rg.rows(); ++r) {
    for (std::size_t j = 0; j < b; ++j) {
      std::fill(row.begin(), row.end(), Int(0));
      for (std::size_t i = 0; i < a; ++i) row[i * b + j] = rg(r, i);
      rel.append_row(row);
    }
  }
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t r = 0; r < rh.rows(); ++r) {
      std::fill(row.begin(), row.end(), Int(0));
      for (std::size_t j = 0; j < b; ++j) row[i * b + j] = rh(r, j);
      rel.append_row(row);
    }
  }
  return from_presentation(rel, a * b);
}

FgaGroup group_from_elements(const std::vector<GroupElement>& elems) {
  if (elems.empty()) throw DomainError("group_from_elements: empty element list");
  std::vector<PrimaryComponent> comps;
  for (const auto& [p, total] : factorize(Int(static_cast<unsigned long>(elems.size())))) {
    // Multiplying by the prime-to-p part of |S| kills everything off the p-part,
    // so killed_k / killed_{k-1} = p^{a_k} with a_k the number of cyclic
    // p-factors of exponent >= k.
    const Int other = Int(static_cast<unsigned long>(elems.size())) / ipow(p, total);
    auto killed_by = [&](unsigned k) {
      const Int m = other * ipow(p, k);
      return static_cast<std::size_t>(std::count_if(elems.begin(), elems.end(),
                                                    [&](const GroupElement& x) { return x.scaled(m).is_zero(); }));
    };
    std::vector<unsigned> at_least;
    std::size_t prev = killed_by(0);
    for (unsigned k = 1; k <= total; ++k) {
      const std::size_t killed = killed_by(k);
      at_least.push_back(valuation(Int(static_cast<unsigned long>(killed / prev)), p));
      prev = killed;
    }
    PrimaryComponent c{p, {}};
    for (unsigned k = 1; k <= total; ++k) {
      const unsigned here = at_least[k - 1] - (k < total ? at_least[k] : 0);
      c.exponents.insert(c.exponents.end(), here, k);
    }
    comps.push_back(std::move(c));
  }
  return FgaGroup(0, std::move(comps));
}

FgaGroup tor_oracle(const FgaGroup& g, const FgaGroup& h) {
  const std::vector<GroupElement> elems = all_elements(h.torsion_subgroup());
  FgaGroup out;
  for (const auto& f : g.factors()) {
    std::vector<GroupElement> killed;
    for (const auto& x : elems)
      if (x.scaled(f.modulus).is_zero()) killed.push_back(x);
    out = direct_sum(out, group_from_elements(killed));
  }
  return out;
}

}  // namespace kdual
