#ifndef CSPEC_SPECTRUM_HPP
#define CSPEC_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cspec/characters.hpp"
#include "cspec/collision.hpp"

namespace cspec {

// All sums below run over units in ascending order, so results are
// bit-reproducible.

/// s°(chi) = (1/phi) sum_a S°(a) conj(chi(a)). S° is converted to double once
/// per term, at the last step.
inline complex fourier_coefficient(const collision_table& table, const character& chi) {
  if (chi.modulus() != table.modulus()) throw error(errc::wrong_modulus, "character and table moduli differ");
  complex sum{0.0, 0.0};
  for (std::int64_t a : table.units()) sum += to_double(table.centered(a)) * std::conj(chi(a));
  return sum / static_cast<double>(table.group().order());
}

/// B_{1, conj chi} = (1/q) sum_{a=1}^{q-1} a conj(chi(a)).
inline complex bernoulli_b1(const character& chi) {
  complex sum{0.0, 0.0};
  for (std::int64_t a : chi.group().units()) sum += static_cast<double>(a) * std::conj(chi(a));
  return sum / static_cast<double>(chi.modulus());
}

/// S_G(chi) = sum_{n in G} [conj chi(n+1) - conj chi(n)], zero off units.
inline complex diagonal_sum(const character& chi, const diagonal_set& g) {
  complex sum{0.0, 0.0};
  for (std::int64_t n : g.members) sum += std::conj(chi(n + 1)) - std::conj(chi(n));
  return sum;
}

inline complex diagonal_sum(const character& chi) { return diagonal_sum(chi, make_diagonal_set(chi.group().base())); }

/// sum_{k=1}^{b-1} conj chi(k).
inline complex short_sum(const character& chi) {
  complex sum{0.0, 0.0};
  for (std::int64_t k = 1; k < chi.group().base(); ++k) sum += std::conj(chi(k));
  return sum;
}

struct spectrum_record {
  std::int64_t chi_index = 0;
  bool odd = false;
  bool primitive = false;
  complex s_hat;
  complex b1;
  complex s_g;
  complex p_short;
  /// |s° + B1 conj(S_G) / phi|
  double decomposition_residual = 0.0;
};

inline spectrum_record make_spectrum_record(const collision_table& table, const character& chi,
                                            const diagonal_set& g) {
  spectrum_record r;
  r.chi_index = chi.index();
  r.odd = is_odd(chi);
  r.primitive = is_primitive(chi);
  r.s_hat = fourier_coefficient(table, chi);
  r.b1 = bernoulli_b1(chi);
  r.s_g = diagonal_sum(chi, g);
  r.p_short = short_sum(chi);
  r.decomposition_residual =
      std::abs(r.s_hat + r.b1 * std::conj(r.s_g) / static_cast<double>(table.group().order()));
  return r;
}

/// One record per character mod b^2, with the worst value of each
/// record-level bound.
struct decomposition_report {
  std::int64_t base = 0;
  double tolerance = 1e-10;
  std::vector<spectrum_record> records;
  double worst_primitive_odd_residual = 0.0;  // factorization
  double worst_even_s_hat = 0.0;              // even vanishing
  double worst_imprimitive_s_hat = 0.0;       // imprimitive odd vanishing
  double worst_imprimitive_s_g = 0.0;

  bool passed() const {
    return worst_primitive_odd_residual < tolerance && worst_even_s_hat < tolerance &&
           worst_imprimitive_s_hat < tolerance && worst_imprimitive_s_g < tolerance;
  }
};

inline decomposition_report verify_decomposition(const collision_table& table, double tol = 1e-10) {
  decomposition_report rep;
  rep.base = table.base();
  rep.tolerance = tol;
  const diagonal_set g = make_diagonal_set(table.base());
  for (const character& chi : enumerate_family(table.shared_group(), family::all)) {
    spectrum_record r = make_spectrum_record(table, chi, g);
    if (!r.odd) {
      rep.worst_even_s_hat = std::max(rep.worst_even_s_hat, std::abs(r.s_hat));
    } else if (r.primitive) {
      rep.worst_primitive_odd_residual = std::max(rep.worst_primitive_odd_residual, r.decomposition_residual);
    } else {
      rep.worst_imprimitive_s_hat = std::max(rep.worst_imprimitive_s_hat, std::abs(r.s_hat));
      rep.worst_imprimitive_s_g = std::max(rep.worst_imprimitive_s_g, std::abs(r.s_g));
    }
    rep.records.push_back(r);
  }
  return rep;
}

inline decomposition_report verify_decomposition(std::int64_t b, double tol = 1e-10) {
  return verify_decomposition(collision_table(build_group_pair(b).mod_b2), tol);
}

/// Term-by-term reconstruction of phi * s°(chi) for a primitive odd chi.
/// Every field is an absolute residual that vanishes in exact arithmetic.
struct step_report {
  std::int64_t chi_index = 0;
  double centering = 0.0;       // |sum_a mean(a mod b) conj chi(a)|
  double constant = 0.0;        // |sum_a conj chi(a)|
  double fractional = 0.0;      // |sum_a {a/b} conj chi(a)|
  double floor_term = 0.0;      // |sum_a floor(a/b) conj chi(a) - b B1|
  double lemma = 0.0;           // max_n |sum_a conj chi(a) {na/m} - chi(n) B1|
  double endpoint_low = 0.0;    // |sum_a d_0(a) conj chi(a)|
  double endpoint_high = 0.0;   // |sum_a d_{m-1}(a) conj chi(a)|
  double interior_slices = 0.0; // max_n |sum_a d_n conj chi - [1 + chi(n) - chi(n+1)] B1|
  double slice_total = 0.0;     // |sum_G sum_a d_n conj chi - B1 (b - conj S_G)|
  double combine = 0.0;         // |assembled phi s° + B1 conj S_G|
  double assembly = 0.0;        // |assembled phi s° - phi * fourier_coefficient|

  double worst() const {
    return std::max({centering, constant, fractional, floor_term, lemma, endpoint_low, endpoint_high,
                     interior_slices, slice_total, combine, assembly});
  }
};

inline step_report verify_proof_steps(const collision_table& table, const character& chi) {
  if (chi.modulus() != table.modulus()) throw error(errc::wrong_modulus, "character and table moduli differ");
  if (!is_odd(chi) || !is_primitive(chi)) {
    throw error(errc::not_primitive_odd, "character index " + std::to_string(chi.index()) + " is not primitive odd");
  }
  const std::int64_t b = table.base();
  const std::int64_t m = table.modulus();
  const double phi = static_cast<double>(table.group().order());
  const auto units = table.units();
  const complex b1 = bernoulli_b1(chi);
  const diagonal_set g = make_diagonal_set(b);
  const complex s_g = diagonal_sum(chi, g);

  std::vector<complex> conj_vals;
  conj_vals.reserve(units.size());
  for (std::int64_t a : units) conj_vals.push_back(std::conj(chi(a)));

  step_report rep;
  rep.chi_index = chi.index();

  complex centering{0.0, 0.0}, constant{0.0, 0.0}, fractional{0.0, 0.0}, floor_sum{0.0, 0.0};
  for (std::size_t i = 0; i < units.size(); ++i) {
    const std::int64_t a = units[i];
    centering += to_double(table.class_mean(a % b)) * conj_vals[i];
    constant += conj_vals[i];
    fractional += (static_cast<double>(a % b) / static_cast<double>(b)) * conj_vals[i];
    floor_sum += static_cast<double>(a / b) * conj_vals[i];
  }
  rep.centering = std::abs(centering);
  rep.constant = std::abs(constant);
  rep.fractional = std::abs(fractional);
  rep.floor_term = std::abs(floor_sum - static_cast<double>(b) * b1);

  for (std::int64_t n : units) {
    complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < units.size(); ++i) {
      sum += (static_cast<double>(n * units[i] % m) / static_cast<double>(m)) * conj_vals[i];
    }
    rep.lemma = std::max(rep.lemma, std::abs(sum - chi(n) * b1));
  }

  auto slice_sum = [&](std::int64_t n) {
    complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < units.size(); ++i) sum += static_cast<double>(slice_count(n, units[i], m)) * conj_vals[i];
    return sum;
  };
  rep.endpoint_low = std::abs(slice_sum(0));
  rep.endpoint_high = std::abs(slice_sum(m - 1));
  complex slices{0.0, 0.0};
  for (std::int64_t n : g.members) {
    const complex s = slice_sum(n);
    slices += s;
    if (n != 0 && n != m - 1) {
      rep.interior_slices =
          std::max(rep.interior_slices, std::abs(s - (complex{1.0, 0.0} + chi(n) - chi(n + 1)) * b1));
    }
  }
  rep.slice_total = std::abs(slices - b1 * (static_cast<double>(b) - std::conj(s_g)));

  const complex assembled = -constant - floor_sum + slices - centering;
  rep.combine = std::abs(assembled + b1 * std::conj(s_g));
  rep.assembly = std::abs(assembled - phi * fourier_coefficient(table, chi));
  return rep;
}

}  // namespace cspec

#endif  // CSPEC_SPECTRUM_HPP
