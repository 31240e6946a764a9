#ifndef CSPEC_PRIME_SUMS_HPP
#define CSPEC_PRIME_SUMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cspec/spectrum.hpp"

namespace cspec {

inline constexpr std::int64_t default_cutoff = 1'000'000;

/// A prime p in (m, N] with its weight p^(-s) = exp(-s ln p).
struct prime_term {
  std::int64_t p;
  double weight;
};

inline std::vector<prime_term> prime_terms(const prime_list& primes, std::int64_t m, double s, std::int64_t cutoff) {
  if (!(s > 0.0)) throw error(errc::invalid_argument, "exponent s must be positive");
  if (cutoff <= m) {
    throw error(errc::cutoff_below_modulus,
                "cutoff " + std::to_string(cutoff) + " must exceed the modulus " + std::to_string(m));
  }
  if (cutoff > primes.limit) {
    throw error(errc::invalid_argument, "cutoff " + std::to_string(cutoff) + " exceeds the sieve limit");
  }
  std::vector<prime_term> out;
  auto first = std::upper_bound(primes.primes.begin(), primes.primes.end(), static_cast<std::uint64_t>(m),
                                [](std::uint64_t v, std::uint32_t p) { return v < p; });
  for (auto it = first; it != primes.primes.end() && static_cast<std::int64_t>(*it) <= cutoff; ++it) {
    const auto p = static_cast<std::int64_t>(*it);
    out.push_back({p, std::exp(-s * std::log(static_cast<double>(p)))});
  }
  return out;
}

inline complex p_trunc(const character& chi, const std::vector<prime_term>& terms) {
  complex sum{0.0, 0.0};
  for (const prime_term& t : terms) sum += chi(t.p) * t.weight;
  return sum;
}

/// P_{>m}(s, chi) truncated at N: sum over primes m < p <= N of chi(p) p^(-s).
inline complex p_trunc(const character& chi, double s, std::int64_t cutoff, const prime_list& primes) {
  const std::int64_t b = chi.group().base();
  return p_trunc(chi, prime_terms(primes, b * b, s, cutoff));
}

inline complex f_trunc(const collision_table& table, const std::vector<prime_term>& terms) {
  double sum = 0.0;
  for (const prime_term& t : terms) sum += to_double(table.centered(t.p % table.modulus())) * t.weight;
  return {sum, 0.0};
}

/// F°_{>m}(s) truncated at N. Every prime p > m = b^2 is a unit mod m.
inline complex f_trunc(const collision_table& table, double s, std::int64_t cutoff, const prime_list& primes) {
  return f_trunc(table, prime_terms(primes, table.modulus(), s, cutoff));
}

struct prime_sum_record {
  std::int64_t base = 0;
  double s = 0.0;
  std::int64_t cutoff = 0;
  complex f_trunc;
  /// P truncated, for each primitive odd character index.
  std::vector<std::pair<std::int64_t, complex>> p_trunc;
  /// |F - sum_{prim odd} s° P|
  double expansion_residual = 0.0;
  /// |sum_{all chi} s° P - sum_{prim odd} s° P|
  double all_vs_primitive = 0.0;
  double bound_lhs = 0.0;
  double bound_rhs = 0.0;
  double margin = 0.0;
};

/// Finite Fourier expansion of the truncated collision series over the
/// characters, and the triangle-inequality bound
///
///   |F| <= (1/phi) sum_{prim odd} |B1| |S_G| |P|.
///
/// At finite truncation both hold unconditionally; nothing here depends on the
/// location of zeros of L(s, chi).
inline prime_sum_record prime_sum_analysis(const collision_table& table, double s, std::int64_t cutoff,
                                           const prime_list& primes) {
  const std::vector<prime_term> terms = prime_terms(primes, table.modulus(), s, cutoff);
  const double phi = static_cast<double>(table.group().order());
  const diagonal_set g = make_diagonal_set(table.base());

  prime_sum_record rec;
  rec.base = table.base();
  rec.s = s;
  rec.cutoff = cutoff;
  rec.f_trunc = f_trunc(table, terms);

  complex primitive_sum{0.0, 0.0};
  complex other_sum{0.0, 0.0};
  for (const character& chi : enumerate_family(table.shared_group(), family::all)) {
    const complex p = p_trunc(chi, terms);
    const complex term = fourier_coefficient(table, chi) * p;
    if (is_odd(chi) && is_primitive(chi)) {
      primitive_sum += term;
      rec.p_trunc.emplace_back(chi.index(), p);
      rec.bound_rhs += std::abs(bernoulli_b1(chi)) * std::abs(diagonal_sum(chi, g)) * std::abs(p);
    } else {
      other_sum += term;
    }
  }
  rec.bound_rhs /= phi;
  rec.expansion_residual = std::abs(rec.f_trunc - primitive_sum);
  rec.all_vs_primitive = std::abs(other_sum);
  rec.bound_lhs = std::abs(rec.f_trunc);
  rec.margin = rec.bound_rhs - rec.bound_lhs;
  return rec;
}

inline prime_sum_record verify_expansion(const collision_table& table, double s, std::int64_t cutoff,
                                         const prime_list& primes) {
  return prime_sum_analysis(table, s, cutoff, primes);
}

inline prime_sum_record verify_expansion(std::int64_t b, double s, std::int64_t cutoff) {
  return verify_expansion(collision_table(build_group_pair(b).mod_b2), s, cutoff, sieve_primes(cutoff));
}

inline prime_sum_record cross_moment_bound(const collision_table& table, double s, std::int64_t cutoff,
                                           const prime_list& primes) {
  if (!(s > 0.5)) throw error(errc::invalid_argument, "cross-moment bound needs s > 1/2");
  return prime_sum_analysis(table, s, cutoff, primes);
}

inline prime_sum_record cross_moment_bound(std::int64_t b, double s, std::int64_t cutoff) {
  return cross_moment_bound(collision_table(build_group_pair(b).mod_b2), s, cutoff, sieve_primes(cutoff));
}

}  // namespace cspec

#endif  // CSPEC_PRIME_SUMS_HPP
