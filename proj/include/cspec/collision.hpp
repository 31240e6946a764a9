#ifndef CSPEC_COLLISION_HPP
#define CSPEC_COLLISION_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "cspec/unit_group.hpp"

namespace cspec {

using rational = boost::rational<std::int64_t>;

inline double to_double(const rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Residues mod b^2 whose two base-b digits coincide: {r(b+1) : 0 <= r < b}.
struct diagonal_set {
  std::int64_t base = 0;
  std::vector<std::int64_t> members;

  bool contains(std::int64_t n) const { return std::binary_search(members.begin(), members.end(), n); }
};

/// Arithmetic-progression form.
inline diagonal_set make_diagonal_set(std::int64_t b) {
  diagonal_set g{b, {}};
  for (std::int64_t r = 0; r < b; ++r) g.members.push_back(r * (b + 1));
  return g;
}

/// Digit-coincidence form, by exhaustive scan of {0, ..., b^2 - 1}.
inline diagonal_set scan_diagonal_set(std::int64_t b) {
  diagonal_set g{b, {}};
  for (std::int64_t n = 0; n < b * b; ++n) {
    if (n / b == n % b) g.members.push_back(n);
  }
  return g;
}

/// d_n(a) = floor((n+1)a/m) - floor(na/m); always in [0, a].
inline std::int64_t slice_count(std::int64_t n, std::int64_t a, std::int64_t m) {
  return (n + 1) * a / m - n * a / m;
}

/// The collision invariant on the units mod m = b^2, from the slice formula
///
///   S(a) = -1 - floor(a/b) + sum_{n in G} d_n(a),
///
/// together with its exact centering S°(a) = S(a) - mean of S over the coset
/// a mod b. Cosets are labelled by k = a mod b in {1, ..., b-1}; the label
/// R = (a-1) mod b names the same partition shifted by one.
class collision_table {
 public:
  explicit collision_table(group_ptr group) : group_(std::move(group)) {
    if (group_->level() != group_level::mod_b_squared) {
      throw error(errc::wrong_modulus, "the collision invariant lives on units mod b^2");
    }
    const std::int64_t b = group_->base();
    const std::int64_t m = group_->modulus();
    const diagonal_set g = make_diagonal_set(b);

    values_.assign(static_cast<std::size_t>(m), 0);
    centered_.assign(static_cast<std::size_t>(m), rational(0));
    std::vector<std::int64_t> class_sum(static_cast<std::size_t>(b), 0);
    for (std::int64_t a : group_->units()) {
      std::int64_t s = -1 - a / b;
      for (std::int64_t n : g.members) s += slice_count(n, a, m);
      values_[static_cast<std::size_t>(a)] = s;
      class_sum[static_cast<std::size_t>(a % b)] += s;
    }
    // each coset {a = k mod b} of units mod b^2 has exactly b elements
    class_means_.assign(static_cast<std::size_t>(b), rational(0));
    for (std::int64_t k = 1; k < b; ++k) class_means_[static_cast<std::size_t>(k)] = rational(class_sum[static_cast<std::size_t>(k)], b);
    for (std::int64_t a : group_->units()) {
      centered_[static_cast<std::size_t>(a)] =
          rational(values_[static_cast<std::size_t>(a)]) - class_means_[static_cast<std::size_t>(a % b)];
    }
  }

  const unit_group& group() const noexcept { return *group_; }
  const group_ptr& shared_group() const noexcept { return group_; }
  std::int64_t base() const noexcept { return group_->base(); }
  std::int64_t modulus() const noexcept { return group_->modulus(); }
  std::span<const std::int64_t> units() const noexcept { return group_->units(); }

  std::int64_t value(std::int64_t a) const { return values_[checked(a)]; }
  const rational& centered(std::int64_t a) const { return centered_[checked(a)]; }

  /// Mean of S over the coset a = k mod b, k in {1, ..., b-1}.
  const rational& class_mean(std::int64_t k) const {
    if (k <= 0 || k >= base()) throw error(errc::invalid_argument, "class label out of range");
    return class_means_[static_cast<std::size_t>(k)];
  }

 private:
  std::size_t checked(std::int64_t a) const {
    if (!group_->is_unit(a)) throw error(errc::invalid_argument, std::to_string(a) + " is not a unit");
    return static_cast<std::size_t>(group_->reduce(a));
  }

  group_ptr group_;
  std::vector<std::int64_t> values_;
  std::vector<rational> centered_;
  std::vector<rational> class_means_;
};

inline collision_table collision_invariant(const group_ptr& group) { return collision_table(group); }

/// CSV dump: a,S,S_centered_num,S_centered_den, one row per unit.
inline void write_collision_csv(std::ostream& os, const collision_table& table) {
  os << "a,S,S_centered_num,S_centered_den\n";
  for (std::int64_t a : table.units()) {
    const rational& c = table.centered(a);
    os << a << ',' << table.value(a) << ',' << c.numerator() << ',' << c.denominator() << '\n';
  }
}

}  // namespace cspec

#endif  // CSPEC_COLLISION_HPP
