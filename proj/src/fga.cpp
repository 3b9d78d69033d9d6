#include "kdual/fga.hpp"

#include <algorithm>
#include <sstream>

namespace kdual {

Int ipow(const Int& base, unsigned exponent) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

unsigned valuation(const Int& x, const Int& p) {
  if (x == 0) throw DomainError("valuation of zero");
  Int rest = abs(x);
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t()));
}

bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 25) != 0; }

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  if (n < 1) throw DomainError("factorize: argument must be positive");
  std::vector<std::pair<Int, unsigned>> out;
  Int rest = n;
  auto strip = [&](const Int& p) {
    if (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      unsigned e = static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t()));
      out.emplace_back(p, e);
    }
  };
  strip(Int(2));
  for (Int d = 3; rest > 1 && d * d <= rest; d += 2) {
    if (is_prime(rest)) break;
    strip(d);
  }
  if (rest > 1) out.emplace_back(rest, 1u);
  return out;
}

// ---------------------------------------------------------------------------
// FgaGroup

FgaGroup::FgaGroup(std::size_t free_rank, std::vector<PrimaryComponent> torsion) : free_rank_(free_rank) {
  std::sort(torsion.begin(), torsion.end(),
            [](const PrimaryComponent& a, const PrimaryComponent& b) { return a.prime < b.prime; });
  for (auto& comp : torsion) {
    if (!is_prime(comp.prime)) throw DomainError("not a prime: " + comp.prime.get_str());
    std::erase(comp.exponents, 0u);
    if (comp.exponents.empty()) continue;
    if (!torsion_.empty() && torsion_.back().prime == comp.prime) {
      auto& ex = torsion_.back().exponents;
      ex.insert(ex.end(), comp.exponents.begin(), comp.exponents.end());
    } else {
      torsion_.push_back(std::move(comp));
    }
  }
  for (auto& comp : torsion_) std::sort(comp.exponents.begin(), comp.exponents.end());
}

FgaGroup FgaGroup::cyclic(const Int& n) {
  if (n < 0) throw DomainError("cyclic: negative order");
  if (n == 0) return free(1);
  std::vector<PrimaryComponent> comps;
  for (auto& [p, e] : factorize(n)) comps.push_back({p, {e}});
  return FgaGroup(0, std::move(comps));
}

FgaGroup FgaGroup::prime_power(const Int& p, unsigned k) { return FgaGroup(0, {{p, {k}}}); }

std::size_t FgaGroup::factor_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : torsion_) n += c.exponents.size();
  return n;
}

std::vector<CyclicFactor> FgaGroup::factors() const {
  std::vector<CyclicFactor> out;
  out.reserve(factor_count());
  for (const auto& c : torsion_)
    for (unsigned e : c.exponents) out.push_back({c.prime, e, ipow(c.prime, e)});
  return out;
}

std::vector<Int> FgaGroup::moduli() const {
  std::vector<Int> out;
  out.reserve(factor_count());
  for (const auto& c : torsion_)
    for (unsigned e : c.exponents) out.push_back(ipow(c.prime, e));
  return out;
}

const PrimaryComponent* FgaGroup::component(const Int& p) const {
  for (const auto& c : torsion_)
    if (c.prime == p) return &c;
  return nullptr;
}

std::vector<Int> FgaGroup::primes() const {
  std::vector<Int> out;
  for (const auto& c : torsion_) out.push_back(c.prime);
  return out;
}

bool FgaGroup::is_p_group(const Int& p) const {
  return free_rank_ == 0 && (torsion_.empty() || (torsion_.size() == 1 && torsion_.front().prime == p));
}

Int FgaGroup::torsion_order() const {
  Int n = 1;
  for (const auto& c : torsion_)
    for (unsigned e : c.exponents) n *= ipow(c.prime, e);
  return n;
}

Int FgaGroup::torsion_exponent() const {
  Int n = 1;
  for (const auto& c : torsion_) n *= ipow(c.prime, c.exponents.back());
  return n;
}

std::vector<Int> FgaGroup::invariant_factors() const {
  std::size_t len = 0;
  for (const auto& c : torsion_) len = std::max(len, c.exponents.size());
  std::vector<Int> d(len, Int(1));
  for (const auto& c : torsion_) {
    // Largest exponents pair with the last invariant factor.
    const std::size_t offset = len - c.exponents.size();
    for (std::size_t i = 0; i < c.exponents.size(); ++i) d[offset + i] *= ipow(c.prime, c.exponents[i]);
  }
  return d;
}

std::string FgaGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << " + ";
    first = false;
  };
  if (free_rank_ == 1) {
    sep();
    out << "Z";
  } else if (free_rank_ > 1) {
    sep();
    out << "Z^" << free_rank_;
  }
  for (const auto& f : factors()) {
    sep();
    out << "Z/" << f.modulus;
  }
  return out.str();
}

bool FgaGroup::operator<(const FgaGroup& rhs) const {
  if (free_rank_ != rhs.free_rank_) return free_rank_ < rhs.free_rank_;
  if (torsion_.size() != rhs.torsion_.size()) return torsion_.size() < rhs.torsion_.size();
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    const auto& a = torsion_[i];
    const auto& b = rhs.torsion_[i];
    if (a.prime != b.prime) return a.prime < b.prime;
    if (a.exponents != b.exponents) return a.exponents < b.exponents;
  }
  return false;
}

std::size_t FgaGroupHash::operator()(const FgaGroup& g) const noexcept {
  std::size_t h = g.free_rank() * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& c : g.torsion()) {
    mix(mpz_get_ui(c.prime.get_mpz_t()));
    for (unsigned e : c.exponents) mix(e);
    mix(0xffff);
  }
  return h;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(FgaGroup shape, std::vector<Int> torsion, std::vector<Int> free)
    : shape_(std::move(shape)), torsion_(std::move(torsion)), free_(std::move(free)) {
  if (torsion_.size() != shape_.factor_count())
    throw DomainError("element has " + std::to_string(torsion_.size()) + " torsion coordinates, group has " +
                      std::to_string(shape_.factor_count()) + " torsion factors");
  if (free_.size() != shape_.free_rank())
    throw DomainError("element has " + std::to_string(free_.size()) + " free coordinates, group has free rank " +
                      std::to_string(shape_.free_rank()));
  std::size_t i = 0;
  for (const auto& c : shape_.torsion())
    for (unsigned e : c.exponents) {
      Int m = ipow(c.prime, e);
      mpz_fdiv_r(torsion_[i].get_mpz_t(), torsion_[i].get_mpz_t(), m.get_mpz_t());
      ++i;
    }
}

GroupElement GroupElement::zero(const FgaGroup& shape) {
  return GroupElement(shape, std::vector<Int>(shape.factor_count()), std::vector<Int>(shape.free_rank()));
}

GroupElement GroupElement::generator(const FgaGroup& shape, std::size_t index) {
  std::vector<Int> t(shape.factor_count());
  std::vector<Int> f(shape.free_rank());
  if (index < t.size())
    t[index] = 1;
  else if (index - t.size() < f.size())
    f[index - t.size()] = 1;
  else
    throw DomainError("generator index out of range");
  return GroupElement(shape, std::move(t), std::move(f));
}

bool GroupElement::is_zero() const {
  return std::all_of(torsion_.begin(), torsion_.end(), [](const Int& x) { return x == 0; }) &&
         std::all_of(free_.begin(), free_.end(), [](const Int& x) { return x == 0; });
}

bool GroupElement::has_finite_order() const {
  return std::all_of(free_.begin(), free_.end(), [](const Int& x) { return x == 0; });
}

Int GroupElement::free_content() const {
  Int g = 0;
  for (const auto& x : free_) g = gcd(g, x);
  return g;
}

GroupElement GroupElement::operator+(const GroupElement& rhs) const {
  if (!(shape_ == rhs.shape_)) throw DomainError("adding elements of different groups");
  std::vector<Int> t(torsion_.size());
  std::vector<Int> f(free_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = torsion_[i] + rhs.torsion_[i];
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = free_[i] + rhs.free_[i];
  return GroupElement(shape_, std::move(t), std::move(f));
}

GroupElement GroupElement::operator-() const { return scaled(-1); }

GroupElement GroupElement::scaled(const Int& factor) const {
  std::vector<Int> t(torsion_.size());
  std::vector<Int> f(free_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = torsion_[i] * factor;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = free_[i] * factor;
  return GroupElement(shape_, std::move(t), std::move(f));
}

std::string GroupElement::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < torsion_.size(); ++i) out << (i ? "," : "") << torsion_[i];
  out << ';';
  for (std::size_t i = 0; i < free_.size(); ++i) out << (i ? "," : "") << free_[i];
  out << ')';
  return out.str();
}

// ---------------------------------------------------------------------------
// Constructions

IntMatrix presentation(const FgaGroup& g) {
  const std::size_t t = g.factor_count();
  IntMatrix m(t, t + g.free_rank());
  std::size_t i = 0;
  for (const auto& f : g.factors()) {
    m(i, i) = f.modulus;
    ++i;
  }
  return m;
}

FgaGroup from_presentation(const IntMatrix& relations) { return from_presentation(relations, relations.cols()); }

FgaGroup from_presentation(const IntMatrix& relations, std::size_t generators) {
  if (relations.rows() > 0 && relations.cols() != generators)
    throw DomainError("presentation width does not match generator count");
  if (relations.rows() == 0) return FgaGroup::free(generators);
  std::size_t nonzero = 0;
  std::vector<PrimaryComponent> comps;
  for (const Int& d : smith_diagonal(relations)) {
    if (d == 0) continue;
    ++nonzero;
    if (d == 1) continue;
    for (auto& [p, e] : factorize(d)) comps.push_back({p, {e}});
  }
  return FgaGroup(generators - nonzero, std::move(comps));
}

bool is_isomorphic(const FgaGroup& g, const FgaGroup& h) { return g == h; }

FgaGroup direct_sum(const FgaGroup& g, const FgaGroup& h) {
  std::vector<PrimaryComponent> comps = g.torsion();
  comps.insert(comps.end(), h.torsion().begin(), h.torsion().end());
  return FgaGroup(g.free_rank() + h.free_rank(), std::move(comps));
}

FgaGroup direct_power(const FgaGroup& g, std::size_t copies) {
  std::vector<PrimaryComponent> comps;
  for (const auto& c : g.torsion()) {
    PrimaryComponent rep{c.prime, {}};
    for (unsigned e : c.exponents) rep.exponents.insert(rep.exponents.end(), copies, e);
    comps.push_back(std::move(rep));
  }
  return FgaGroup(g.free_rank() * copies, std::move(comps));
}

GroupElement direct_sum_element(const GroupElement& a, const GroupElement& b) {
  const auto fa = a.shape().factors();
  const auto fb = b.shape().factors();
  std::vector<Int> coords;
  coords.reserve(fa.size() + fb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  // Stable merge by (prime, exponent), left operand first on ties: matches the
  // canonical factor order of the sum.
  while (i < fa.size() || j < fb.size()) {
    bool take_left = j == fb.size() ||
                     (i < fa.size() && (fa[i].prime < fb[j].prime ||
                                        (fa[i].prime == fb[j].prime && fa[i].exponent <= fb[j].exponent)));
    coords.push_back(take_left ? a.torsion_coords()[i++] : b.torsion_coords()[j++]);
  }
  std::vector<Int> free = a.free_coords();
  free.insert(free.end(), b.free_coords().begin(), b.free_coords().end());
  return GroupElement(direct_sum(a.shape(), b.shape()), std::move(coords), std::move(free));
}

FgaGroup quotient_by(const FgaGroup& g, std::span<const GroupElement> elems) {
  const std::size_t t = g.factor_count();
  const std::size_t width = t + g.free_rank();
  IntMatrix rel = presentation(g);
  std::vector<Int> row(width);
  for (const auto& e : elems) {
    if (!(e.shape() == g)) throw DomainError("quotient_by: element does not belong to the group");
    std::copy(e.torsion_coords().begin(), e.torsion_coords().end(), row.begin());
    std::copy(e.free_coords().begin(), e.free_coords().end(), row.begin() + static_cast<std::ptrdiff_t>(t));
    rel.append_row(row);
  }
  return from_presentation(rel, width);
}

FgaGroup quotient_by(const FgaGroup& g, const GroupElement& elem) { return quotient_by(g, std::span(&elem, 1)); }

std::optional<Int> element_order(const GroupElement& e) {
  if (!e.has_finite_order()) return std::nullopt;
  Int order = 1;
  std::size_t i = 0;
  for (const auto& f : e.shape().factors()) {
    Int g = gcd(e.torsion_coords()[i++], f.modulus);
    order = lcm(order, f.modulus / g);
  }
  return order;
}

namespace {

// T (x) S for torsion groups: Z/p^a (x) Z/p^b = Z/p^min(a,b), zero across primes.
std::vector<PrimaryComponent> torsion_tensor(const FgaGroup& g, const FgaGroup& h) {
  std::vector<PrimaryComponent> out;
  for (const auto& a : g.torsion()) {
    const PrimaryComponent* b = h.component(a.prime);
    if (!b) continue;
    PrimaryComponent c{a.prime, {}};
    for (unsigned x : a.exponents)
      for (unsigned y : b->exponents) c.exponents.push_back(std::min(x, y));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

FgaGroup tensor(const FgaGroup& g, const FgaGroup& h) {
  std::vector<PrimaryComponent> comps = torsion_tensor(g, h);
  for (const auto& c : g.torsion()) {
    PrimaryComponent rep{c.prime, {}};
    for (unsigned e : c.exponents) rep.exponents.insert(rep.exponents.end(), h.free_rank(), e);
    comps.push_back(std::move(rep));
  }
  for (const auto& c : h.torsion()) {
    PrimaryComponent rep{c.prime, {}};
    for (unsigned e : c.exponents) rep.exponents.insert(rep.exponents.end(), g.free_rank(), e);
    comps.push_back(std::move(rep));
  }
  return FgaGroup(g.free_rank() * h.free_rank(), std::move(comps));
}

FgaGroup tor(const FgaGroup& g, const FgaGroup& h) { return FgaGroup(0, torsion_tensor(g, h)); }

}  // namespace kdual
