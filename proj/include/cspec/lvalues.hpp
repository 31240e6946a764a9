#ifndef CSPEC_LVALUES_HPP
#define CSPEC_LVALUES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "cspec/characters.hpp"
#include "cspec/spectrum.hpp"

namespace cspec {

enum class l_method { closed_form, series };

inline const char* to_string(l_method m) { return m == l_method::closed_form ? "closed_form" : "series"; }

struct l_value {
  std::int64_t chi_index = 0;
  complex value;
  l_method method = l_method::closed_form;
  std::int64_t truncation = 0;
  /// Bound on |L(1, chi) - value|; zero for the closed form.
  double tail_bound = 0.0;
  /// max_t |sum_{n<=t} chi(n)| over one period; series only.
  double max_partial_sum = 0.0;
};

/// Primitive and odd. Mod b every non-principal character is primitive.
inline bool is_primitive_odd(const character& chi) {
  if (!is_odd(chi)) return false;
  return chi.group().level() == group_level::mod_b ? !chi.is_principal() : is_primitive(chi);
}

/// L(1, chi) = i pi tau(chi) B_{1, conj chi} / q for odd primitive chi.
inline l_value l_value_closed(const character& chi) {
  if (!is_primitive_odd(chi)) {
    throw error(errc::not_primitive_odd, "closed form needs an odd primitive character, index " +
                                             std::to_string(chi.index()));
  }
  l_value out;
  out.chi_index = chi.index();
  out.value = complex{0.0, std::numbers::pi} * gauss_sum(chi) * bernoulli_b1(chi) / static_cast<double>(chi.modulus());
  return out;
}

namespace detail {
/// Neumaier-compensated running sum.
struct compensated_sum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};
}  // namespace detail

/// Truncated series sum_{n<=N} chi(n)/n with a partial-summation tail bound.
///
/// With A(t) = sum_{n<=t} chi(n) (periodic, since the period sum is zero), the
/// tail satisfies |sum_{n>N} chi(n)/n| <= max_t |A(t) - A(N)| / (N+1). When q
/// divides N this is max_t |A(t)| / (N+1).
inline l_value l_value_series(const character& chi, std::int64_t n_terms) {
  if (chi.is_principal()) throw error(errc::principal_character, "L(1, chi_0) diverges");
  const std::int64_t q = chi.modulus();
  if (n_terms < q * q) {
    throw error(errc::invalid_argument, "series truncation must be at least q^2 = " + std::to_string(q * q));
  }
  const std::vector<complex> vals = chi.period();

  detail::compensated_sum re, im;
  std::int64_t r = 1;
  for (std::int64_t n = 1; n <= n_terms; ++n) {
    const complex& v = vals[static_cast<std::size_t>(r)];
    if (v != complex{0.0, 0.0}) {
      const double inv = 1.0 / static_cast<double>(n);
      re.add(v.real() * inv);
      im.add(v.imag() * inv);
    }
    if (++r == q) r = 0;
  }

  std::vector<complex> partial(static_cast<std::size_t>(q));
  complex acc{0.0, 0.0};
  for (std::int64_t t = 0; t < q; ++t) {
    acc += vals[static_cast<std::size_t>(t)];
    partial[static_cast<std::size_t>(t)] = acc;
  }
  const complex at_cutoff = partial[static_cast<std::size_t>(n_terms % q)];
  double max_abs = 0.0;
  double max_offset = 0.0;
  for (const complex& p : partial) {
    max_abs = std::max(max_abs, std::abs(p));
    max_offset = std::max(max_offset, std::abs(p - at_cutoff));
  }

  l_value out;
  out.chi_index = chi.index();
  out.value = {re.value(), im.value()};
  out.method = l_method::series;
  out.truncation = n_terms;
  out.tail_bound = max_offset / static_cast<double>(n_terms + 1);
  out.max_partial_sum = max_abs;
  return out;
}

/// Number of reduced primitive binary quadratic forms (a, b, c) with
/// b^2 - 4ac = disc < 0: |b| <= a <= c, and b >= 0 when |b| = a or a = c.
inline std::int64_t reduced_form_count(std::int64_t disc) {
  if (disc >= 0 || (((disc % 4) + 4) % 4 != 0 && ((disc % 4) + 4) % 4 != 1)) {
    throw error(errc::bad_discriminant, std::to_string(disc) + " is not a negative discriminant");
  }
  const std::int64_t n = -disc;
  std::int64_t count = 0;
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b + n;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

struct class_number_record {
  std::int64_t base = 0;
  std::int64_t discriminant = 0;
  /// sqrt(b) |L(1, chi)| / pi before rounding.
  double h_raw = 0.0;
  std::int64_t h_from_l = 0;
  std::int64_t h_from_forms = 0;

  double rounding_distance() const { return std::abs(h_raw - static_cast<double>(h_from_l)); }
  bool agrees() const { return h_from_l == h_from_forms; }
};

inline constexpr double class_number_guard_band = 1e-3;

/// h(-b) two ways, for a prime b = 3 mod 4, b > 3: from L(1) of the Legendre
/// symbol mod b via |L(1, chi_D)| = pi h / sqrt|D|, and by counting reduced forms.
///
/// The quadratic character has conductor b, so it is realized on the mod-b
/// group rather than among the primitive characters mod b^2.
inline class_number_record class_number_check(std::int64_t b) {
  if (!is_prime(b)) throw error(errc::not_odd_prime, std::to_string(b) + " is not prime");
  if (b % 4 != 3 || b <= 3) {
    throw error(errc::bad_discriminant, "-" + std::to_string(b) + " needs b = 3 mod 4 and b > 3");
  }
  const group_ptr group = build_unit_group(b, group_level::mod_b);
  const character legendre(group, (b - 1) / 2);

  class_number_record rec;
  rec.base = b;
  rec.discriminant = -b;
  rec.h_raw = std::sqrt(static_cast<double>(b)) * std::abs(l_value_closed(legendre).value) / std::numbers::pi;
  rec.h_from_l = std::llround(rec.h_raw);
  if (rec.rounding_distance() > class_number_guard_band) {
    throw error(errc::invalid_argument, "h(-" + std::to_string(b) + ") = " + std::to_string(rec.h_raw) +
                                            " is not within the guard band of an integer");
  }
  rec.h_from_forms = reduced_form_count(-b);
  return rec;
}

}  // namespace cspec

#endif  // CSPEC_LVALUES_HPP
