#include "kdual/p_invariants.hpp"

#include <algorithm>
#include <functional>

namespace kdual {

std::vector<unsigned> NormalFormData::exponents() const {
  std::vector<unsigned> all = untouched;
  all.insert(all.end(), k.begin(), k.end());
  std::sort(all.begin(), all.end());
  return all;
}

bool NormalFormData::invariants_hold() const {
  if (k.size() != r.size()) return false;
  const std::size_t s = k.size();
  if (mode == NormalFormMode::AugmentedReducible) return s == 0;
  if (s == 0) return false;
  for (std::size_t i = 0; i < s; ++i) {
    if (r[i] == 0 || r[i] > k[i]) return false;
    if (i + 1 < s && !(k[i] < k[i + 1] && r[i] < r[i + 1] && k[i] - r[i] < k[i + 1] - r[i + 1])) return false;
  }
  if (mode == NormalFormMode::Finite) return r.back() == l;
  if (l < 1) return false;
  return std::all_of(k.begin(), k.end(), [&, i = std::size_t{0}](unsigned ki) mutable {
    return ki - r[i++] < l;
  });
}

FgaGroup primary_part(const FgaGroup& g, const Int& p) {
  const PrimaryComponent* c = g.component(p);
  if (!c) return FgaGroup();
  return FgaGroup(0, {*c});
}

PExponentProfile invariant_I(const FgaGroup& g, const Int& p) {
  const PrimaryComponent* c = g.component(p);
  return PExponentProfile{p, c ? c->exponents : std::vector<unsigned>{}};
}

PExponentProfile i_intersect(const PExponentProfile& a, const PExponentProfile& b) {
  if (a.p != b.p) throw DomainError("i_intersect: profiles for different primes");
  PExponentProfile out{a.p, {}};
  std::set_intersection(a.exponents.begin(), a.exponents.end(), b.exponents.begin(), b.exponents.end(),
                        std::back_inserter(out.exponents));
  return out;
}

PExponentProfile i_difference(const PExponentProfile& a, const PExponentProfile& b) {
  if (a.p != b.p) throw DomainError("i_difference: profiles for different primes");
  PExponentProfile out{a.p, {}};
  std::set_difference(a.exponents.begin(), a.exponents.end(), b.exponents.begin(), b.exponents.end(),
                      std::back_inserter(out.exponents));
  return out;
}

namespace {

struct Residuals {
  bool equal = false;
  std::vector<unsigned> left;   // I(G) \ I(H)
  std::vector<unsigned> right;  // I(H) \ I(G)
};

Residuals residuals(const FgaGroup& g, const FgaGroup& h, const Int& p) {
  PExponentProfile a = invariant_I(g, p);
  PExponentProfile b = invariant_I(h, p);
  Residuals out;
  out.equal = a.exponents == b.exponents;
  out.left = i_difference(a, b).exponents;
  out.right = i_difference(b, a).exponents;
  return out;
}

bool alternates(const Residuals& res) {
  std::vector<std::pair<unsigned, int>> merged;
  for (unsigned x : res.left) merged.emplace_back(x, 0);
  for (unsigned x : res.right) merged.emplace_back(x, 1);
  std::sort(merged.begin(), merged.end());
  for (std::size_t i = 1; i < merged.size(); ++i) {
    if (merged[i].first == merged[i - 1].first) return false;
    if (merged[i].second == merged[i - 1].second) return false;
  }
  return true;
}

}  // namespace

bool satisfies_star(const FgaGroup& g, const FgaGroup& h, const Int& p) {
  Residuals res = residuals(g, h, p);
  return res.equal || alternates(res);
}

bool satisfies_star_star(const FgaGroup& g, const FgaGroup& h, const Int& p) {
  Residuals res = residuals(g, h, p);
  if (res.equal) return true;
  if (!alternates(res)) return false;
  const unsigned max_left = res.left.empty() ? 0 : res.left.back();
  const unsigned max_right = res.right.empty() ? 0 : res.right.back();
  return max_right > max_left;
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

// Coordinates of a finite p-group, optionally followed by one Z coordinate.
// Every elementary automorphism is applied to the tracked element and to the
// generator images, so `images` always describes the composite automorphism.
class Reducer {
 public:
  Reducer(const Int& p, std::vector<unsigned> exps, std::vector<Int> coords, bool with_z)
      : p_(p), exps_(std::move(exps)), x_(std::move(coords)), with_z_(with_z) {
    for (unsigned e : exps_) mod_.push_back(ipow(p_, e));
    const std::size_t n = x_.size();
    images_.assign(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i) images_[i][i] = 1;
  }

  std::size_t torsion_size() const { return exps_.size(); }
  std::size_t z_index() const { return exps_.size(); }
  const Int& coord(std::size_t i) const { return x_[i]; }
  unsigned exponent(std::size_t i) const { return exps_[i]; }

  // coordinate i *= unit
  void scale(std::size_t i, const Int& unit) {
    auto op = [&](std::vector<Int>& v) {
      v[i] *= unit;
      reduce(v, i);
    };
    apply(op);
  }

  // coordinate dst += c * coordinate src
  void add(std::size_t src, std::size_t dst, const Int& c) {
    auto op = [&](std::vector<Int>& v) {
      v[dst] += c * v[src];
      reduce(v, dst);
    };
    apply(op);
  }

  GeneratorImages witness() const { return GeneratorImages{images_, x_}; }

 private:
  void reduce(std::vector<Int>& v, std::size_t i) const {
    if (i < mod_.size()) mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), mod_[i].get_mpz_t());
  }
  template <class Op>
  void apply(Op& op) {
    op(x_);
    for (auto& img : images_) op(img);
  }

  Int p_;
  std::vector<unsigned> exps_;
  std::vector<Int> mod_;
  std::vector<Int> x_;
  bool with_z_;
  std::vector<std::vector<Int>> images_;
};

struct Pivot {
  std::size_t index;
  unsigned k;
  unsigned r;
};

// Brings every nonzero torsion coordinate to p^{e_i - R_i}, then eliminates
// against the pivot with the largest order (leftmost on ties) and recurses on
// the prefix. Pivots are returned in discovery order (largest first).
std::vector<Pivot> reduce_to_normal_form(Reducer& red, const Int& p) {
  const std::size_t t = red.torsion_size();
  std::vector<unsigned> order_exp(t, 0);
  for (std::size_t i = 0; i < t; ++i) {
    const Int& xi = red.coord(i);
    if (xi == 0) continue;
    const unsigned v = valuation(xi, p);
    order_exp[i] = red.exponent(i) - v;
    Int unit = xi / ipow(p, v);
    Int inverse;
    const Int modulus = ipow(p, red.exponent(i));
    mpz_invert(inverse.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
    red.scale(i, inverse);
  }

  std::vector<Pivot> pivots;
  std::size_t hi = t;
  for (;;) {
    unsigned l = 0;
    for (std::size_t i = 0; i < hi; ++i)
      if (red.coord(i) != 0) l = std::max(l, order_exp[i]);
    if (l == 0) break;
    std::size_t i1 = 0;
    while (red.coord(i1) == 0 || order_exp[i1] != l) ++i1;
    const long pivot_height = static_cast<long>(red.exponent(i1)) - static_cast<long>(l);
    for (std::size_t i = 0; i < hi; ++i) {
      if (i == i1 || red.coord(i) == 0) continue;
      const long height = static_cast<long>(red.exponent(i)) - static_cast<long>(order_exp[i]);
      // Above the pivot every nonzero entry can be cleared; below it only those
      // at least as high as the pivot.
      if (i < i1 && height < pivot_height) continue;
      const unsigned d = static_cast<unsigned>(height - pivot_height);
      red.add(i1, i, -ipow(p, d));
      order_exp[i] = 0;
    }
    pivots.push_back({i1, red.exponent(i1), l});
    hi = i1;
  }
  return pivots;
}

void fill_from_pivots(NormalFormData& d, const std::vector<unsigned>& exps, const std::vector<Pivot>& pivots) {
  std::vector<bool> is_pivot(exps.size(), false);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    d.k.push_back(it->k);
    d.r.push_back(it->r);
    is_pivot[it->index] = true;
  }
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (!is_pivot[i]) d.untouched.push_back(exps[i]);
}

std::vector<unsigned> p_group_exponents(const FgaGroup& g, const Int& p, const char* who) {
  if (!g.is_p_group(p)) throw DomainError(std::string(who) + ": group is not a finite " + p.get_str() + "-group");
  const PrimaryComponent* c = g.component(p);
  return c ? c->exponents : std::vector<unsigned>{};
}

}  // namespace

NormalFormData g1_normal_form(const FgaGroup& g, const GroupElement& e, const Int& p) {
  std::vector<unsigned> exps = p_group_exponents(g, p, "g1_normal_form");
  if (!(e.shape() == g)) throw DomainError("g1_normal_form: element does not belong to the group");
  if (e.is_zero()) throw DomainError("g1_normal_form: element is zero");

  Reducer red(p, exps, e.torsion_coords(), false);
  std::vector<Pivot> pivots = reduce_to_normal_form(red, p);

  NormalFormData d;
  d.p = p;
  d.mode = NormalFormMode::Finite;
  fill_from_pivots(d, exps, pivots);
  d.l = d.r.back();
  d.witness = red.witness();
  return d;
}

NormalFormData g3_normal_form(const FgaGroup& g, const GroupElement& e, unsigned l, const Int& p) {
  std::vector<unsigned> exps = p_group_exponents(g, p, "g3_normal_form");
  if (!(e.shape() == g)) throw DomainError("g3_normal_form: element does not belong to the group");

  std::vector<Int> coords = e.torsion_coords();
  coords.push_back(ipow(p, l));
  Reducer red(p, exps, coords, true);

  NormalFormData d;
  d.p = p;
  d.l = l;
  if (e.is_zero() || l == 0) {
    // (g, 1) -> (0, 1) via (x, n) -> (x - n g, n).
    if (!e.is_zero())
      for (std::size_t i = 0; i < exps.size(); ++i) red.add(red.z_index(), i, -e.torsion_coords()[i]);
    d.mode = NormalFormMode::AugmentedReducible;
    d.untouched = exps;
    d.witness = red.witness();
    return d;
  }

  std::vector<Pivot> pivots = reduce_to_normal_form(red, p);
  // The Z generator clears pivots with k - r >= l, largest first.
  while (!pivots.empty() && pivots.front().k - pivots.front().r >= l) {
    const Pivot top = pivots.front();
    red.add(red.z_index(), top.index, -ipow(p, top.k - top.r - l));
    pivots.erase(pivots.begin());
  }
  d.mode = pivots.empty() ? NormalFormMode::AugmentedReducible : NormalFormMode::Augmented;
  fill_from_pivots(d, exps, pivots);
  d.witness = red.witness();
  return d;
}

FgaGroup g2_quotient_closed_form(const NormalFormData& d) {
  if (d.mode != NormalFormMode::Finite) throw DomainError("g2_quotient_closed_form: data is not in FINITE mode");
  std::vector<unsigned> exps = d.untouched;
  for (std::size_t i = 0; i < d.k.size(); ++i) exps.push_back(d.k[i] - d.r[i] + (i ? d.r[i - 1] : 0));
  return FgaGroup(0, {{d.p, std::move(exps)}});
}

AugmentedQuotient g4_quotient_closed_form(const NormalFormData& d) {
  if (d.mode == NormalFormMode::Finite) throw DomainError("g4_quotient_closed_form: data is in FINITE mode");
  // (exponent, t_tilde coordinate) in closed-form order.
  std::vector<std::pair<unsigned, Int>> parts;
  for (unsigned n : d.untouched) parts.emplace_back(n, Int(0));
  if (d.mode == NormalFormMode::AugmentedReducible) {
    parts.emplace_back(d.l, Int(1));
  } else {
    const std::size_t s = d.k.size();
    for (std::size_t i = 0; i < s; ++i) {
      const unsigned prev_r = i ? d.r[i - 1] : 0;
      parts.emplace_back(d.k[i] - d.r[i] + prev_r, i ? ipow(d.p, prev_r) : Int(1));
    }
    parts.emplace_back(d.l + d.r.back(), ipow(d.p, d.r.back()));
  }
  std::erase_if(parts, [](const auto& part) { return part.first == 0; });
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<unsigned> exps;
  std::vector<Int> coords;
  for (auto& [e, c] : parts) {
    exps.push_back(e);
    coords.push_back(c);
  }
  FgaGroup q(0, {{d.p, std::move(exps)}});
  return AugmentedQuotient{q, GroupElement(q, std::move(coords), {})};
}

GroupElement normal_form_element(const NormalFormData& d) {
  std::vector<unsigned> exps = d.exponents();
  FgaGroup g(0, {{d.p, exps}});
  std::vector<Int> coords(exps.size());
  if (d.mode != NormalFormMode::AugmentedReducible) {
    for (std::size_t i = 0; i < d.k.size(); ++i) {
      // The last factor carrying exponent k_i; k is strictly increasing so
      // pivots never collide.
      auto it = std::upper_bound(exps.begin(), exps.end(), d.k[i]);
      coords[static_cast<std::size_t>(it - exps.begin()) - 1] = ipow(d.p, d.k[i] - d.r[i]);
    }
  }
  return GroupElement(g, std::move(coords), {});
}

std::vector<NormalFormData> normal_form_shapes(const Int& p, const std::vector<unsigned>& exponents,
                                               std::optional<unsigned> augment_l) {
  std::vector<unsigned> values = exponents;
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<NormalFormData> out;
  if (augment_l) {
    NormalFormData red;
    red.p = p;
    red.l = *augment_l;
    red.mode = NormalFormMode::AugmentedReducible;
    red.untouched = exponents;
    out.push_back(red);
    if (*augment_l == 0) return out;
  }

  std::vector<unsigned> ks;
  std::vector<unsigned> rs;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (!ks.empty()) {
      NormalFormData d;
      d.p = p;
      d.k = ks;
      d.r = rs;
      d.mode = augment_l ? NormalFormMode::Augmented : NormalFormMode::Finite;
      d.l = augment_l ? *augment_l : rs.back();
      std::vector<unsigned> rest = exponents;
      for (unsigned kv : ks) rest.erase(std::find(rest.begin(), rest.end(), kv));
      d.untouched = std::move(rest);
      out.push_back(std::move(d));
    }
    for (std::size_t vi = from; vi < values.size(); ++vi) {
      const unsigned k = values[vi];
      for (unsigned r = 1; r <= k; ++r) {
        if (!rs.empty() && r <= rs.back()) continue;
        if (!ks.empty() && k - r <= ks.back() - rs.back()) continue;
        if (augment_l && k - r >= *augment_l) continue;
        ks.push_back(k);
        rs.push_back(r);
        extend(vi + 1);
        ks.pop_back();
        rs.pop_back();
      }
    }
  };
  extend(0);
  return out;
}

// ---------------------------------------------------------------------------
// Automorphism criterion

IntMatrix reduce_free_vector(const std::vector<Int>& v) {
  const std::size_t n = v.size();
  IntMatrix d = IntMatrix::identity(n);
  std::vector<Int> w = v;
  for (;;) {
    std::optional<std::size_t> pivot;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] == 0) continue;
      ++nonzero;
      if (!pivot || mpz_cmpabs(w[i].get_mpz_t(), w[*pivot].get_mpz_t()) < 0) pivot = i;
    }
    if (nonzero <= 1) {
      if (pivot) {
        d.swap_rows(0, *pivot);
        std::swap(w[0], w[*pivot]);
        if (w[0] < 0) {
          d.negate_row(0);
          w[0] = -w[0];
        }
      }
      return d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == *pivot || w[i] == 0) continue;
      Int q;
      mpz_tdiv_q(q.get_mpz_t(), w[i].get_mpz_t(), w[*pivot].get_mpz_t());
      w[i] -= q * w[*pivot];
      d.add_row_multiple(i, *pivot, -q);
    }
  }
}

namespace {

// Coordinates of e restricted to the p-primary factors, as an element of G(p).
GroupElement p_projection(const GroupElement& e, const Int& p, const FgaGroup& gp) {
  std::vector<Int> coords;
  std::size_t i = 0;
  for (const auto& c : e.shape().torsion()) {
    for (std::size_t j = 0; j < c.exponents.size(); ++j, ++i)
      if (c.prime == p) coords.push_back(e.torsion_coords()[i]);
  }
  return GroupElement(gp, std::move(coords), {});
}

}  // namespace

bool aut_sends(const FgaGroup& g, const GroupElement& e1, const GroupElement& e2) {
  if (!(e1.shape() == g) || !(e2.shape() == g)) throw DomainError("aut_sends: element does not belong to the group");
  if (e1 == e2) return true;
  if (element_order(e1) != element_order(e2)) return false;

  // Automorphisms act on the free coordinates through GL(F, Z), so the content
  // is invariant and the free part can be taken to be (n, 0, ..., 0).
  auto content_of = [](const GroupElement& e) {
    const IntMatrix d = reduce_free_vector(e.free_coords());
    Int n = 0;
    for (std::size_t j = 0; j < e.free_coords().size(); ++j) n += d(0, j) * e.free_coords()[j];
    return n;
  };
  const Int n = content_of(e1);
  if (n != content_of(e2)) return false;

  for (const auto& comp : g.torsion()) {
    const Int& p = comp.prime;
    FgaGroup gp(0, {comp});
    GroupElement a = p_projection(e1, p, gp);
    GroupElement b = p_projection(e2, p, gp);
    if (a == b) continue;
    if (n == 0) {
      if (a.is_zero() || b.is_zero()) return false;
      if (!(g2_quotient_closed_form(g1_normal_form(gp, a, p)) == g2_quotient_closed_form(g1_normal_form(gp, b, p))))
        return false;
    } else {
      const unsigned np = mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) ? valuation(n, p) : 0;
      if (!(g4_quotient_closed_form(g3_normal_form(gp, a, np, p)).q ==
            g4_quotient_closed_form(g3_normal_form(gp, b, np, p)).q))
        return false;
    }
  }
  return true;
}

}  // namespace kdual
