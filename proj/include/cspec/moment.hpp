#ifndef CSPEC_MOMENT_HPP
#define CSPEC_MOMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "cspec/lvalues.hpp"
#include "cspec/spectrum.hpp"

namespace cspec {

/// sum over units of S°(a)^2, exactly.
inline rational centered_square_sum(const collision_table& table) {
  rational sum(0);
  for (std::int64_t a : table.units()) sum += table.centered(a) * table.centered(a);
  return sum;
}

struct moment_report {
  std::int64_t base = 0;
  /// sum over primitive odd chi of |L(1, chi)|^2 |S_G(chi)|^2
  double lhs = 0.0;
  /// (pi^2 phi / b^2) sum_a S°(a)^2
  double rhs = 0.0;
  double rel_err = 0.0;
  /// Parseval on the unit group: sum_chi |s°|^2 against (1/phi) sum_a S°(a)^2.
  double parseval_lhs = 0.0;
  double parseval_rhs = 0.0;
  double parseval_rel_err = 0.0;
};

inline moment_report verify_moment(const collision_table& table) {
  const std::int64_t b = table.base();
  const double phi = static_cast<double>(table.group().order());
  const double squares = to_double(centered_square_sum(table));
  const diagonal_set g = make_diagonal_set(b);

  moment_report rep;
  rep.base = b;
  for (const character& chi : enumerate_family(table.shared_group(), family::all)) {
    rep.parseval_lhs += std::norm(fourier_coefficient(table, chi));
    if (is_odd(chi) && is_primitive(chi)) {
      rep.lhs += std::norm(l_value_closed(chi).value) * std::norm(diagonal_sum(chi, g));
    }
  }
  rep.parseval_rhs = squares / phi;
  rep.rhs = std::numbers::pi * std::numbers::pi * phi / static_cast<double>(b * b) * squares;
  rep.rel_err = std::abs(rep.lhs - rep.rhs) / rep.rhs;
  rep.parseval_rel_err = std::abs(rep.parseval_lhs - rep.parseval_rhs) / rep.parseval_rhs;
  return rep;
}

inline moment_report verify_moment(std::int64_t b) { return verify_moment(collision_table(build_group_pair(b).mod_b2)); }

struct encoding_record {
  std::int64_t chi_index = 0;
  double s_hat_abs = 0.0;
  double l_abs = 0.0;
  double s_g_abs = 0.0;
  /// | |s°| - (b / (pi phi)) |L(1, chi)| |S_G| |
  double encoding_residual = 0.0;
  /// | |B_{1, conj chi}| - (b / pi) |L(1, chi)| |
  double magnitude_residual = 0.0;
};

inline std::vector<encoding_record> verify_encoding(const collision_table& table) {
  const double b = static_cast<double>(table.base());
  const double phi = static_cast<double>(table.group().order());
  const diagonal_set g = make_diagonal_set(table.base());
  std::vector<encoding_record> out;
  for (const character& chi : enumerate_family(table.shared_group(), family::primitive_odd)) {
    encoding_record r;
    r.chi_index = chi.index();
    r.s_hat_abs = std::abs(fourier_coefficient(table, chi));
    r.l_abs = std::abs(l_value_closed(chi).value);
    r.s_g_abs = std::abs(diagonal_sum(chi, g));
    r.encoding_residual = std::abs(r.s_hat_abs - b / (std::numbers::pi * phi) * r.l_abs * r.s_g_abs);
    r.magnitude_residual = std::abs(std::abs(bernoulli_b1(chi)) - b / std::numbers::pi * r.l_abs);
    out.push_back(r);
  }
  return out;
}

/// Largest base for which |S_G| = 2 |P_short| is a known verified identity.
/// Beyond it the residuals are measured and reported only.
inline constexpr std::int64_t short_sum_verified_limit = 13;

struct base5_report {
  std::int64_t base = 0;
  bool in_verified_range = false;
  /// max over primitive odd chi of | |S_G| - 2 |P_short| |
  double worst_short_sum_residual = 0.0;
  std::vector<double> short_sum_residuals;
  // b = 5 only
  std::optional<double> worst_sqrt5_residual;  // | |P_short| - (sqrt5/2) |B1| |
  std::optional<double> fourth_moment_lhs;     // sum |L(1, chi)|^4
  std::optional<double> fourth_moment_rhs;     // (4 pi^4 / 625) sum_a S°(a)^2
  std::optional<double> fourth_moment_rel_err;
};

inline base5_report verify_base5_identities(const collision_table& table) {
  const std::int64_t b = table.base();
  const diagonal_set g = make_diagonal_set(b);
  base5_report rep;
  rep.base = b;
  rep.in_verified_range = b <= short_sum_verified_limit;

  double sqrt5_worst = 0.0;
  double fourth = 0.0;
  for (const character& chi : enumerate_family(table.shared_group(), family::primitive_odd)) {
    const double p_abs = std::abs(short_sum(chi));
    const double residual = std::abs(std::abs(diagonal_sum(chi, g)) - 2.0 * p_abs);
    rep.short_sum_residuals.push_back(residual);
    rep.worst_short_sum_residual = std::max(rep.worst_short_sum_residual, residual);
    if (b == 5) {
      sqrt5_worst = std::max(sqrt5_worst, std::abs(p_abs - std::sqrt(5.0) / 2.0 * std::abs(bernoulli_b1(chi))));
      fourth += std::pow(std::abs(l_value_closed(chi).value), 4);
    }
  }
  if (b == 5) {
    // |S_G| = (5 sqrt5 / pi) |L| turns the moment identity into
    // sum |L|^4 = (pi^2 phi / b^2) (pi^2 / 125) sum S°^2 = (4 pi^4 / 625) sum S°^2.
    const double pi4 = std::pow(std::numbers::pi, 4);
    rep.worst_sqrt5_residual = sqrt5_worst;
    rep.fourth_moment_lhs = fourth;
    rep.fourth_moment_rhs = 4.0 * pi4 / 625.0 * to_double(centered_square_sum(table));
    rep.fourth_moment_rel_err = std::abs(fourth - *rep.fourth_moment_rhs) / *rep.fourth_moment_rhs;
  }
  return rep;
}

inline base5_report verify_base5_identities(std::int64_t b) {
  return verify_base5_identities(collision_table(build_group_pair(b).mod_b2));
}

}  // namespace cspec

#endif  // CSPEC_MOMENT_HPP
