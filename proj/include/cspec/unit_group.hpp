#ifndef CSPEC_UNIT_GROUP_HPP
#define CSPEC_UNIT_GROUP_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cspec/error.hpp"

namespace cspec {

using complex = std::complex<double>;

/// e(x) = exp(2 pi i x) for a rational x = num/den, reduced into [0, 1) first
/// so the trigonometric argument stays small.
inline complex unit_root(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime factors, ascending, by trial division.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

/// g generates (Z/qZ)^x, a group of order phi: g^phi = 1 and g^(phi/p) != 1
/// for every prime p | phi.
inline bool is_primitive_root(std::int64_t g, std::int64_t q, std::int64_t phi) {
  if (g <= 0 || g >= q || std::gcd(g, q) != 1) return false;
  if (pow_mod(g, phi, q) != 1) return false;
  for (std::int64_t p : prime_factors(phi)) {
    if (pow_mod(g, phi / p, q) == 1) return false;
  }
  return true;
}

enum class group_level { mod_b, mod_b_squared };

inline constexpr std::int64_t max_base = 10'000;

/// The cyclic group (Z/qZ)^x for q = b or q = b^2, b an odd prime.
///
/// Residues are canonical, in {0, ..., q-1}. The discrete-log table is indexed
/// by residue and holds -1 at non-units. The table of roots e(k/phi) is built
/// once by direct trigonometric evaluation per k.
class unit_group {
 public:
  std::int64_t base() const noexcept { return base_; }
  std::int64_t modulus() const noexcept { return modulus_; }
  std::int64_t order() const noexcept { return order_; }
  std::int64_t generator() const noexcept { return generator_; }
  group_level level() const noexcept { return level_; }

  std::int64_t reduce(std::int64_t a) const noexcept {
    std::int64_t r = a % modulus_;
    return r < 0 ? r + modulus_ : r;
  }

  bool is_unit(std::int64_t a) const noexcept { return dlog_[static_cast<std::size_t>(reduce(a))] >= 0; }

  /// Exponent of a with respect to the generator, or -1 when a is not a unit.
  std::int64_t dlog(std::int64_t a) const noexcept { return dlog_[static_cast<std::size_t>(reduce(a))]; }

  std::int64_t power(std::int64_t k) const { return pow_mod(generator_, k, modulus_); }

  /// e(k / phi).
  complex root(std::int64_t k) const noexcept {
    std::int64_t r = k % order_;
    if (r < 0) r += order_;
    return roots_[static_cast<std::size_t>(r)];
  }

  std::span<const std::int64_t> units() const noexcept { return units_; }

  /// Builds the group with an explicitly chosen primitive root.
  static std::shared_ptr<const unit_group> with_generator(std::int64_t b, group_level lvl, std::int64_t g) {
    check_base(b);
    auto grp = std::shared_ptr<unit_group>(new unit_group());
    grp->base_ = b;
    grp->level_ = lvl;
    grp->modulus_ = lvl == group_level::mod_b ? b : b * b;
    grp->order_ = lvl == group_level::mod_b ? b - 1 : b * (b - 1);
    if (!is_primitive_root(g, grp->modulus_, grp->order_)) {
      throw error(errc::invalid_argument,
                  std::to_string(g) + " is not a primitive root mod " + std::to_string(grp->modulus_));
    }
    grp->generator_ = g;
    grp->fill_tables();
    return grp;
  }

  static void check_base(std::int64_t b) {
    if (b == 2 || !is_prime(b)) {
      throw error(errc::not_odd_prime, "base " + std::to_string(b) + " is not an odd prime");
    }
    if (b > max_base) {
      throw error(errc::invalid_argument, "base " + std::to_string(b) + " exceeds " + std::to_string(max_base));
    }
  }

 private:
  unit_group() = default;

  void fill_tables() {
    dlog_.assign(static_cast<std::size_t>(modulus_), -1);
    std::int64_t x = 1;
    for (std::int64_t k = 0; k < order_; ++k) {
      dlog_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(k);
      x = x * generator_ % modulus_;
    }
    units_.clear();
    units_.reserve(static_cast<std::size_t>(order_));
    for (std::int64_t a = 1; a < modulus_; ++a) {
      if (dlog_[static_cast<std::size_t>(a)] >= 0) units_.push_back(a);
    }
    roots_.resize(static_cast<std::size_t>(order_));
    for (std::int64_t k = 0; k < order_; ++k) roots_[static_cast<std::size_t>(k)] = unit_root(k, order_);
  }

  std::int64_t base_ = 0;
  std::int64_t modulus_ = 0;
  std::int64_t order_ = 0;
  std::int64_t generator_ = 0;
  group_level level_ = group_level::mod_b;
  std::vector<std::int32_t> dlog_;
  std::vector<std::int64_t> units_;
  std::vector<complex> roots_;
};

using group_ptr = std::shared_ptr<const unit_group>;

/// Unit group with the least primitive root, found by ascending trial.
inline group_ptr build_unit_group(std::int64_t b, group_level lvl) {
  unit_group::check_base(b);
  const std::int64_t q = lvl == group_level::mod_b ? b : b * b;
  const std::int64_t phi = lvl == group_level::mod_b ? b - 1 : b * (b - 1);
  for (std::int64_t g = 2; g < q; ++g) {
    if (is_primitive_root(g, q, phi)) return unit_group::with_generator(b, lvl, g);
  }
  throw error(errc::invalid_argument, "no primitive root found");  // unreachable for odd prime powers
}

/// Groups mod b and mod b^2 whose generators are compatible: the mod-b^2
/// generator reduces mod b to the mod-b generator. The mod-b generator is the
/// least primitive root; the mod-b^2 one is the least compatible primitive root.
struct group_pair {
  group_ptr mod_b;
  group_ptr mod_b2;
};

inline group_pair build_group_pair(std::int64_t b) {
  group_ptr small = build_unit_group(b, group_level::mod_b);
  const std::int64_t gb = small->generator();
  const std::int64_t m = b * b;
  const std::int64_t phi = b * (b - 1);
  for (std::int64_t g = gb; g < m; g += b) {
    if (is_primitive_root(g, m, phi)) return {small, unit_group::with_generator(b, group_level::mod_b_squared, g)};
  }
  throw error(errc::invalid_argument, "no compatible primitive root mod b^2");  // unreachable: gb or gb+b works
}

/// Ascending primes up to a limit.
struct prime_list {
  std::int64_t limit = 0;
  std::vector<std::uint32_t> primes;
};

inline constexpr std::int64_t default_sieve_bound = 1'000'000'000;

/// Sieve of Eratosthenes over odd numbers. Throws LimitTooLarge above max_limit.
inline prime_list sieve_primes(std::int64_t n, std::int64_t max_limit = default_sieve_bound) {
  if (n > max_limit) {
    throw error(errc::limit_too_large,
                "sieve limit " + std::to_string(n) + " exceeds bound " + std::to_string(max_limit));
  }
  if (n < 2) throw error(errc::invalid_argument, "sieve limit must be at least 2");
  prime_list out;
  out.limit = n;
  out.primes.push_back(2);
  // composite[i] refers to the odd number 2i+1
  const auto half = static_cast<std::size_t>((n - 1) / 2 + 1);
  std::vector<bool> composite(half, false);
  for (std::size_t i = 1; i < half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = true;
  }
  return out;
}

}  // namespace cspec

#endif  // CSPEC_UNIT_GROUP_HPP
