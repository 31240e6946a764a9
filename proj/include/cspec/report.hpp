#ifndef CSPEC_REPORT_HPP
#define CSPEC_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "cspec/lvalues.hpp"
#include "cspec/moment.hpp"
#include "cspec/packet.hpp"
#include "cspec/prime_sums.hpp"
#include "cspec/spectrum.hpp"

namespace cspec {

using json = nlohmann::ordered_json;

/// 17 significant digits, '.' separator, no locale.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

namespace detail {
inline void write_indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}
}  // namespace detail

/// Deterministic JSON writer. Floats are written with 17 significant digits;
/// non-finite floats become null.
inline void write_json(std::ostream& os, const json& j, int depth = 0) {
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : std::string("null"));
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // short numeric arrays (complex pairs) stay on one line
      bool flat = j.size() <= 2;
      for (const auto& v : j) flat = flat && v.is_primitive();
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) {
          os << '\n';
          detail::write_indent(os, depth + 1);
        }
        write_json(os, v, depth + 1);
      }
      if (!flat) {
        os << '\n';
        detail::write_indent(os, depth);
      }
      os << ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << '\n';
        detail::write_indent(os, depth + 1);
        os << json(it.key()).dump() << ": ";
        write_json(os, it.value(), depth + 1);
      }
      os << '\n';
      detail::write_indent(os, depth);
      os << '}';
      return;
    }
    default:
      os << j.dump();
  }
}

inline std::string to_json_string(const json& j) {
  std::ostringstream os;
  write_json(os, j);
  os << '\n';
  return os.str();
}

inline json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

/// Outcome of one named check. passed iff worst_residual < tolerance.
struct verdict {
  std::string check;
  bool passed = false;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  json details = json::array();
};

inline verdict make_verdict(std::string check, double worst, double tol, json details = json::array()) {
  verdict v;
  v.check = std::move(check);
  v.worst_residual = worst;
  v.tolerance = tol;
  v.passed = worst < tol;
  v.details = std::move(details);
  return v;
}

inline json to_json(const verdict& v) {
  return json{{"check", v.check},
              {"passed", v.passed},
              {"worst_residual", v.worst_residual},
              {"tolerance", v.tolerance},
              {"details", v.details}};
}

inline json to_json(std::int64_t b, const spectrum_record& r) {
  return json{{"b", b},
              {"j", r.chi_index},
              {"parity", r.odd ? "odd" : "even"},
              {"primitive", r.primitive},
              {"s_hat", complex_json(r.s_hat)},
              {"B1", complex_json(r.b1)},
              {"S_G", complex_json(r.s_g)},
              {"P_short", complex_json(r.p_short)},
              {"residuals", json{{"decomposition", r.decomposition_residual}}}};
}

inline json to_json(std::int64_t b, const step_report& r) {
  return json{{"b", b},
              {"j", r.chi_index},
              {"residuals", json{{"centering", r.centering},
                                 {"constant", r.constant},
                                 {"fractional", r.fractional},
                                 {"floor_term", r.floor_term},
                                 {"lemma", r.lemma},
                                 {"endpoint_low", r.endpoint_low},
                                 {"endpoint_high", r.endpoint_high},
                                 {"interior_slices", r.interior_slices},
                                 {"slice_total", r.slice_total},
                                 {"combine", r.combine},
                                 {"assembly", r.assembly}}}};
}

inline json to_json(const moment_report& r) {
  return json{{"b", r.base},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"rel_err", r.rel_err},
              {"parseval_lhs", r.parseval_lhs},
              {"parseval_rhs", r.parseval_rhs},
              {"parseval_rel_err", r.parseval_rel_err}};
}

inline json to_json(std::int64_t b, const encoding_record& r) {
  return json{{"b", b},
              {"j", r.chi_index},
              {"s_hat_abs", r.s_hat_abs},
              {"L_abs", r.l_abs},
              {"S_G_abs", r.s_g_abs},
              {"residuals", json{{"encoding", r.encoding_residual}, {"magnitude", r.magnitude_residual}}}};
}

inline json to_json(const base5_report& r) {
  json j{{"b", r.base},
         {"in_verified_range", r.in_verified_range},
         {"worst_short_sum_residual", r.worst_short_sum_residual},
         {"short_sum_residuals", r.short_sum_residuals}};
  if (r.worst_sqrt5_residual) j["worst_sqrt5_residual"] = *r.worst_sqrt5_residual;
  if (r.fourth_moment_lhs) {
    j["fourth_moment_lhs"] = *r.fourth_moment_lhs;
    j["fourth_moment_rhs"] = *r.fourth_moment_rhs;
    j["fourth_moment_rel_err"] = *r.fourth_moment_rel_err;
  }
  return j;
}

inline json to_json(std::int64_t b, const l_value& v) {
  return json{{"b", b},
              {"j", v.chi_index},
              {"method", to_string(v.method)},
              {"L", complex_json(v.value)},
              {"truncation", v.truncation},
              {"tail_bound", v.tail_bound}};
}

inline json to_json(const class_number_record& r) {
  return json{{"b", r.base},
              {"D", r.discriminant},
              {"h_raw", r.h_raw},
              {"h_from_L", r.h_from_l},
              {"h_from_forms", r.h_from_forms}};
}

inline json to_json(std::int64_t b, const packet_record& r) {
  return json{{"b", b},
              {"j", r.chi_index},
              {"P_short", complex_json(r.p_short)},
              {"L1", complex_json(r.l1)},
              {"delta", complex_json(r.delta)},
              {"ratio", r.ratio},
              {"phase_cos", r.phase_cos},
              {"terms", r.terms}};
}

inline json to_json(const packet_stats& s) {
  return json{{"b", s.base},
              {"count", s.count},
              {"mean_ratio", s.mean_ratio},
              {"std_ratio", s.std_ratio},
              {"std_ratio_sample", s.std_ratio_sample},
              {"std_ln_b", s.std_ln_b},
              {"std_log10_b", s.std_log10_b},
              {"std_sample_ln_b", s.std_sample_ln_b},
              {"std_sample_log10_b", s.std_sample_log10_b},
              {"mean_phase_cos", s.mean_phase_cos}};
}

inline json to_json(const table1_comparison& c) {
  return json{{"b", c.base},
              {"reference", json{{"mean_ratio", c.reference.mean_ratio},
                                 {"std_ratio", c.reference.std_ratio},
                                 {"std_log_b", c.reference.std_log_b}}},
              {"mean_error", c.mean_error},
              {"std_population_error", c.std_population_error},
              {"std_sample_error", c.std_sample_error},
              {"phase_error", c.phase_error}};
}

inline json to_json(const prime_sum_record& r) {
  return json{{"b", r.base},
              {"s", r.s},
              {"N", r.cutoff},
              {"F", r.f_trunc.real()},
              {"expansion_residual", r.expansion_residual},
              {"all_vs_primitive", r.all_vs_primitive},
              {"bound_lhs", r.bound_lhs},
              {"bound_rhs", r.bound_rhs},
              {"margin", r.margin}};
}

/// Flat table for CSV and pretty output.
struct table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline void write_csv(std::ostream& os, const table& t) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

inline void write_aligned(std::ostream& os, const table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  auto widen = [&width](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  };
  widen(t.header);
  for (const auto& r : t.rows) widen(r);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << (i ? "  " : "") << cells[i];
      if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size(), ' ');
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

}  // namespace cspec

#endif  // CSPEC_REPORT_HPP
