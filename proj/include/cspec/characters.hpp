#ifndef CSPEC_CHARACTERS_HPP
#define CSPEC_CHARACTERS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cspec/unit_group.hpp"

namespace cspec {

/// Dirichlet character mod q on a cyclic unit group, identified by its dual
/// index j against the group's generator:
///
///   chi_j(g^k) = e(j k / phi(q)),   chi_j(a) = 0 when gcd(a, q) > 1.
///
/// Parity is the parity of j, since dlog(-1) = phi/2.
class character {
 public:
  character(group_ptr group, std::int64_t index) : group_(std::move(group)), index_(0) {
    if (!group_) throw error(errc::invalid_argument, "character needs a group");
    const std::int64_t phi = group_->order();
    index_ = ((index % phi) + phi) % phi;
  }

  const unit_group& group() const noexcept { return *group_; }
  const group_ptr& shared_group() const noexcept { return group_; }
  std::int64_t index() const noexcept { return index_; }
  std::int64_t modulus() const noexcept { return group_->modulus(); }

  complex operator()(std::int64_t a) const noexcept {
    const std::int64_t k = group_->dlog(a);
    if (k < 0) return {0.0, 0.0};
    return group_->root(index_ * k);
  }

  character conj() const { return {group_, -index_}; }

  bool is_principal() const noexcept { return index_ == 0; }

  /// One period of values, chi(0), ..., chi(q-1).
  std::vector<complex> period() const {
    std::vector<complex> out(static_cast<std::size_t>(modulus()));
    for (std::int64_t a = 0; a < modulus(); ++a) out[static_cast<std::size_t>(a)] = (*this)(a);
    return out;
  }

  friend bool operator==(const character& x, const character& y) noexcept {
    return x.group_ == y.group_ && x.index_ == y.index_;
  }

 private:
  group_ptr group_;
  std::int64_t index_;
};

inline complex char_value(const character& chi, std::int64_t a) { return chi(a); }

inline bool is_odd(const character& chi) noexcept { return chi.index() % 2 == 1; }

namespace detail {
inline void require_mod_b2(const character& chi) {
  if (chi.group().level() != group_level::mod_b_squared) {
    throw error(errc::wrong_modulus, "primitivity is defined here only for characters mod b^2");
  }
}
}  // namespace detail

/// Primitive mod b^2 iff b does not divide the index.
inline bool is_primitive(const character& chi) {
  detail::require_mod_b2(chi);
  return chi.index() % chi.group().base() != 0;
}

/// Primitive mod b^2 iff chi is non-trivial on the subgroup {u = 1 mod b}.
inline bool is_primitive_by_subgroup(const character& chi, double tol = 1e-12) {
  detail::require_mod_b2(chi);
  const std::int64_t b = chi.group().base();
  for (std::int64_t u = 1 + b; u < chi.modulus(); u += b) {
    if (std::abs(chi(u) - complex{1.0, 0.0}) > tol) return true;
  }
  return false;
}

enum class family { all, odd, even, primitive_odd, imprimitive_odd };

/// Characters of the group matching the filter, in ascending index order.
inline std::vector<character> enumerate_family(const group_ptr& group, family filter) {
  const bool mod_b2 = group->level() == group_level::mod_b_squared;
  if (!mod_b2 && (filter == family::primitive_odd || filter == family::imprimitive_odd)) {
    throw error(errc::wrong_modulus, "primitivity filters need a mod b^2 group");
  }
  std::vector<character> out;
  for (std::int64_t j = 0; j < group->order(); ++j) {
    const bool odd = j % 2 == 1;
    const bool primitive = mod_b2 && j % group->base() != 0;
    bool keep = false;
    switch (filter) {
      case family::all: keep = true; break;
      case family::odd: keep = odd; break;
      case family::even: keep = !odd; break;
      case family::primitive_odd: keep = odd && primitive; break;
      case family::imprimitive_odd: keep = odd && !primitive; break;
    }
    if (keep) out.emplace_back(group, j);
  }
  return out;
}

/// tau(chi) = sum_{a mod q} chi(a) e(a/q), by direct summation.
inline complex gauss_sum(const character& chi) {
  complex sum{0.0, 0.0};
  for (std::int64_t a : chi.group().units()) sum += chi(a) * unit_root(a, chi.modulus());
  return sum;
}

/// The mod-b^2 character xi * chi, xi lifted from mod b.
///
/// With compatible generators, dlog_b(a mod b) = dlog_{b^2}(a) mod (b-1), so the
/// lift of xi_k has index b*k and the product has index j + b*k.
inline character lift_and_twist(const character& xi, const character& chi) {
  const unit_group& small = xi.group();
  const unit_group& big = chi.group();
  if (small.level() != group_level::mod_b || big.level() != group_level::mod_b_squared ||
      small.base() != big.base()) {
    throw error(errc::incompatible_groups, "expected a character mod b and a character mod b^2");
  }
  if (big.generator() % big.base() != small.generator()) {
    throw error(errc::incompatible_groups,
                "generator mod b^2 (" + std::to_string(big.generator()) + ") does not reduce to generator mod b (" +
                    std::to_string(small.generator()) + ")");
  }
  return {chi.shared_group(), chi.index() + big.base() * xi.index()};
}

}  // namespace cspec

#endif  // CSPEC_CHARACTERS_HPP
