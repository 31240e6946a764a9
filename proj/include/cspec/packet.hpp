#ifndef CSPEC_PACKET_HPP
#define CSPEC_PACKET_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "cspec/lvalues.hpp"
#include "cspec/spectrum.hpp"

namespace cspec {

struct packet_record {
  std::int64_t chi_index = 0;
  complex p_short;
  /// L(1, conj chi)
  complex l1;
  complex delta;
  /// |delta| / |L(1, conj chi)|; |L(1, conj chi)| = |L(1, chi)|.
  double ratio = 0.0;
  /// cos(arg delta - arg L1), taken as 0 when delta = 0.
  double phase_cos = 0.0;
  /// number of even nontrivial xi mod b, (b-3)/2
  std::int64_t terms = 0;
};

/// (l1 + delta) / p_short, or nullopt when |p_short| <= 1e-12.
inline std::optional<complex> normalized_probe(complex l1, complex delta, complex p_short) {
  if (std::abs(p_short) <= 1e-12) return std::nullopt;
  return (l1 + delta) / p_short;
}

/// The mod-b group whose generator is the reduction of big's generator.
inline group_ptr compatible_mod_b_group(const unit_group& big) {
  return unit_group::with_generator(big.base(), group_level::mod_b, big.generator() % big.base());
}

/// Evaluates the packet
///
///   Delta(chi) = (i / phi(b)) sum_{xi even, xi != 1 mod b} tau(conj xi) L(1, xi conj chi)
///
/// for primitive odd chi mod b^2, caching L(1, .) by character index.
class packet_builder {
 public:
  explicit packet_builder(std::int64_t b) : packet_builder(build_group_pair(b)) {}

  explicit packet_builder(const group_ptr& mod_b2) : packet_builder(group_pair{compatible_mod_b_group(*mod_b2), mod_b2}) {}

  explicit packet_builder(group_pair pair) : pair_(std::move(pair)) {
    if (pair_.mod_b2->generator() % pair_.mod_b2->base() != pair_.mod_b->generator()) {
      throw error(errc::incompatible_groups, "packet needs compatible generators");
    }
    for (std::int64_t k = 2; k < pair_.mod_b->order(); k += 2) {
      const character xi(pair_.mod_b, k);
      xis_.push_back(xi);
      xi_gauss_.push_back(gauss_sum(xi.conj()));
    }
    l_cache_.resize(static_cast<std::size_t>(pair_.mod_b2->order()));
  }

  const group_pair& groups() const noexcept { return pair_; }
  std::int64_t base() const noexcept { return pair_.mod_b2->base(); }

  packet_record delta(const character& chi) {
    if (chi.shared_group() != pair_.mod_b2) throw error(errc::incompatible_groups, "character is from another group");
    if (!is_primitive_odd(chi)) {
      throw error(errc::not_primitive_odd, "packet needs a primitive odd character, index " + std::to_string(chi.index()));
    }
    const character chi_bar = chi.conj();
    complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < xis_.size(); ++i) {
      const character twist = lift_and_twist(xis_[i], chi_bar);
      if (!is_primitive_odd(twist)) {
        throw error(errc::not_primitive_odd, "twist index " + std::to_string(twist.index()) +
                                                 " is not primitive odd; twisting is inconsistent");
      }
      sum += xi_gauss_[i] * l_at(twist);
    }

    packet_record rec;
    rec.chi_index = chi.index();
    rec.p_short = short_sum(chi);
    rec.l1 = l_at(chi_bar);
    rec.delta = complex{0.0, 1.0} / static_cast<double>(pair_.mod_b->order()) * sum;
    rec.terms = static_cast<std::int64_t>(xis_.size());
    const double d = std::abs(rec.delta);
    const double l = std::abs(rec.l1);
    rec.ratio = d / l;
    rec.phase_cos = d == 0.0 ? 0.0 : std::clamp((rec.delta * std::conj(rec.l1)).real() / (d * l), -1.0, 1.0);
    return rec;
  }

  /// (L(1, conj chi) + Delta(chi)) / P_short(chi), for measuring the
  /// normalization between the short sum and L(1); nullopt when P_short = 0.
  std::optional<complex> normalization_probe(const character& chi) {
    const packet_record rec = delta(chi);
    return normalized_probe(rec.l1, rec.delta, rec.p_short);
  }

 private:
  complex l_at(const character& chi) {
    auto& slot = l_cache_[static_cast<std::size_t>(chi.index())];
    if (!slot) slot = l_value_closed(chi).value;
    return *slot;
  }

  group_pair pair_;
  std::vector<character> xis_;
  std::vector<complex> xi_gauss_;
  std::vector<std::optional<complex>> l_cache_;
};

inline packet_record packet_delta(const character& chi) { return packet_builder(chi.shared_group()).delta(chi); }

struct packet_stats {
  std::int64_t base = 0;
  std::int64_t count = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;         // population
  double std_ratio_sample = 0.0;  // n - 1 denominator
  double std_ln_b = 0.0;
  double std_log10_b = 0.0;
  double std_sample_ln_b = 0.0;
  double std_sample_log10_b = 0.0;
  double mean_phase_cos = 0.0;
};

namespace detail {
/// Sum in sorted order with compensation, so the result does not depend on
/// the order of the input.
inline double order_free_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  compensated_sum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}
}  // namespace detail

inline packet_stats summarize_packets(std::int64_t b, const std::vector<packet_record>& records) {
  packet_stats st;
  st.base = b;
  st.count = static_cast<std::int64_t>(records.size());
  if (records.empty()) return st;
  const double n = static_cast<double>(records.size());
  std::vector<double> ratios, cosines;
  for (const auto& r : records) {
    ratios.push_back(r.ratio);
    cosines.push_back(r.phase_cos);
  }
  st.mean_ratio = detail::order_free_sum(ratios) / n;
  std::vector<double> dev;
  for (double r : ratios) dev.push_back((r - st.mean_ratio) * (r - st.mean_ratio));
  const double ss = detail::order_free_sum(dev);
  st.std_ratio = std::sqrt(ss / n);
  st.std_ratio_sample = records.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const double lb = std::log(static_cast<double>(b));
  const double l10 = std::log10(static_cast<double>(b));
  st.std_ln_b = st.std_ratio * lb;
  st.std_log10_b = st.std_ratio * l10;
  st.std_sample_ln_b = st.std_ratio_sample * lb;
  st.std_sample_log10_b = st.std_ratio_sample * l10;
  st.mean_phase_cos = detail::order_free_sum(cosines) / n;
  return st;
}

/// Packet records for every primitive odd character mod b^2, ascending index.
inline std::vector<packet_record> packet_records(std::int64_t b) {
  packet_builder builder(b);
  std::vector<packet_record> out;
  for (const character& chi : enumerate_family(builder.groups().mod_b2, family::primitive_odd)) {
    out.push_back(builder.delta(chi));
  }
  return out;
}

inline packet_stats compute_packet_stats(std::int64_t b) {
  if (b < 5) throw error(errc::invalid_argument, "packet statistics need b >= 5");
  return summarize_packets(b, packet_records(b));
}

/// Reference statistics of |Delta| / |L| for comparison runs.
struct table1_row {
  std::int64_t base;
  double mean_ratio;
  double std_ratio;
  double std_log_b;
};

inline constexpr std::array<table1_row, 6> table1_reference{{
    {5, 0.80, 0.65, 1.05},
    {7, 1.03, 0.65, 1.26},
    {13, 1.11, 0.50, 1.28},
    {19, 1.10, 0.42, 1.23},
    {31, 1.07, 0.33, 1.12},
    {43, 1.06, 0.29, 1.09},
}};

inline constexpr double table1_tolerance = 0.05;

inline std::optional<table1_row> table1_lookup(std::int64_t b) {
  for (const auto& row : table1_reference) {
    if (row.base == b) return row;
  }
  return std::nullopt;
}

struct table1_comparison {
  std::int64_t base = 0;
  table1_row reference{};
  double mean_error = 0.0;
  double std_population_error = 0.0;
  double std_sample_error = 0.0;
  double phase_error = 0.0;

  /// Worst deviation under the better of the two std conventions.
  double worst_error() const {
    return std::max({mean_error, std::min(std_population_error, std_sample_error), phase_error});
  }
  bool passed(double tol = table1_tolerance) const { return worst_error() <= tol; }
};

inline table1_comparison compare_with_table1(const packet_stats& st) {
  const auto row = table1_lookup(st.base);
  if (!row) throw error(errc::invalid_argument, "no reference row for b = " + std::to_string(st.base));
  table1_comparison c;
  c.base = st.base;
  c.reference = *row;
  c.mean_error = std::abs(st.mean_ratio - row->mean_ratio);
  c.std_population_error = std::abs(st.std_ratio - row->std_ratio);
  c.std_sample_error = std::abs(st.std_ratio_sample - row->std_ratio);
  c.phase_error = std::abs(st.mean_phase_cos);
  return c;
}

}  // namespace cspec

#endif  // CSPEC_PACKET_HPP
