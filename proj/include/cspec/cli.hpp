#ifndef CSPEC_CLI_HPP
#define CSPEC_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cspec/report.hpp"

namespace cspec::cli {

enum class output_format { json, csv, pretty };

/// Environment variable naming a directory for report files; --out wins.
inline constexpr const char* out_dir_env = "CSPEC_OUT_DIR";

struct run_config {
  /// "verify decompose", "table1", "cross-moment", ...
  std::string command;
  std::vector<std::int64_t> bases;
  /// Overrides each check's own default tolerance when set.
  std::optional<double> tolerance;
  std::optional<std::int64_t> cutoff;
  std::optional<double> s;
  std::optional<std::string> output_path;
  output_format format = output_format::json;
};

struct command_result {
  std::vector<verdict> verdicts;
  json reports = json::array();
  table rows;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "verify decompose", "verify steps", "verify vanishing", "verify moment", "verify encoding",
      "verify base5",     "table1",       "packet",           "lvalue",        "classnumber",
      "cross-moment",     "expansion",    "sweep",            "dump-collision"};
  return names;
}

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::int64_t> odd_primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 3; p <= n; p += 2) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

inline std::string num(double x) { return format_double(x); }
inline std::string num(std::int64_t x) { return std::to_string(x); }

inline std::string label(const std::string& check, std::int64_t b) { return check + " b=" + std::to_string(b); }

inline double tol_or(const run_config& cfg, double fallback) { return cfg.tolerance.value_or(fallback); }

inline command_result run_decompose(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "j", "parity", "primitive", "s_hat_re", "s_hat_im", "B1_re", "B1_im",
                     "S_G_re", "S_G_im", "P_short_re", "P_short_im", "decomposition_residual"};
  const double tol = tol_or(cfg, 1e-10);
  for (std::int64_t b : cfg.bases) {
    const decomposition_report rep = verify_decomposition(b, tol);
    json details = json::array();
    for (const auto& r : rep.records) {
      details.push_back(to_json(b, r));
      res.rows.rows.push_back({num(b), num(r.chi_index), r.odd ? "odd" : "even", r.primitive ? "true" : "false",
                               num(r.s_hat.real()), num(r.s_hat.imag()), num(r.b1.real()), num(r.b1.imag()),
                               num(r.s_g.real()), num(r.s_g.imag()), num(r.p_short.real()), num(r.p_short.imag()),
                               num(r.decomposition_residual)});
    }
    res.verdicts.push_back(make_verdict(label("decompose", b), rep.worst_primitive_odd_residual, tol, details));
  }
  return res;
}

inline command_result run_steps(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "j", "worst_residual"};
  const double tol = tol_or(cfg, 1e-10);
  for (std::int64_t b : cfg.bases) {
    const collision_table table(build_group_pair(b).mod_b2);
    json details = json::array();
    double worst = 0.0;
    for (const character& chi : enumerate_family(table.shared_group(), family::primitive_odd)) {
      const step_report r = verify_proof_steps(table, chi);
      worst = std::max(worst, r.worst());
      details.push_back(to_json(b, r));
      res.rows.rows.push_back({num(b), num(r.chi_index), num(r.worst())});
    }
    res.verdicts.push_back(make_verdict(label("steps", b), worst, tol, details));
  }
  return res;
}

inline command_result run_vanishing(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "worst_even_s_hat", "worst_imprimitive_s_hat", "worst_imprimitive_S_G"};
  const double tol = tol_or(cfg, 1e-11);
  for (std::int64_t b : cfg.bases) {
    const decomposition_report rep = verify_decomposition(b, tol);
    const double worst = std::max({rep.worst_even_s_hat, rep.worst_imprimitive_s_hat, rep.worst_imprimitive_s_g});
    json detail{{"b", b},
                {"worst_even_s_hat", rep.worst_even_s_hat},
                {"worst_imprimitive_s_hat", rep.worst_imprimitive_s_hat},
                {"worst_imprimitive_S_G", rep.worst_imprimitive_s_g}};
    res.rows.rows.push_back({num(b), num(rep.worst_even_s_hat), num(rep.worst_imprimitive_s_hat),
                             num(rep.worst_imprimitive_s_g)});
    res.verdicts.push_back(make_verdict(label("vanishing", b), worst, tol, json::array({detail})));
  }
  return res;
}

inline command_result run_moment(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "lhs", "rhs", "rel_err", "parseval_rel_err"};
  const double tol = tol_or(cfg, 1e-9);
  for (std::int64_t b : cfg.bases) {
    const moment_report r = verify_moment(b);
    res.rows.rows.push_back({num(b), num(r.lhs), num(r.rhs), num(r.rel_err), num(r.parseval_rel_err)});
    res.verdicts.push_back(
        make_verdict(label("moment", b), std::max(r.rel_err, r.parseval_rel_err), tol, json::array({to_json(r)})));
  }
  return res;
}

inline command_result run_encoding(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "j", "s_hat_abs", "L_abs", "S_G_abs", "encoding_residual", "magnitude_residual"};
  const double tol = tol_or(cfg, 1e-10);
  for (std::int64_t b : cfg.bases) {
    const collision_table table(build_group_pair(b).mod_b2);
    json details = json::array();
    double worst = 0.0;
    for (const auto& r : verify_encoding(table)) {
      worst = std::max({worst, r.encoding_residual, r.magnitude_residual});
      details.push_back(to_json(b, r));
      res.rows.rows.push_back({num(b), num(r.chi_index), num(r.s_hat_abs), num(r.l_abs), num(r.s_g_abs),
                               num(r.encoding_residual), num(r.magnitude_residual)});
    }
    res.verdicts.push_back(make_verdict(label("encoding", b), worst, tol, details));
  }
  return res;
}

inline command_result run_base5(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "in_verified_range", "worst_short_sum_residual", "worst_sqrt5_residual",
                     "fourth_moment_rel_err"};
  const double tol = tol_or(cfg, 1e-10);
  for (std::int64_t b : cfg.bases) {
    const base5_report r = verify_base5_identities(b);
    res.rows.rows.push_back({num(b), r.in_verified_range ? "true" : "false", num(r.worst_short_sum_residual),
                             r.worst_sqrt5_residual ? num(*r.worst_sqrt5_residual) : "",
                             r.fourth_moment_rel_err ? num(*r.fourth_moment_rel_err) : ""});
    if (!r.in_verified_range) {
      res.reports.push_back(to_json(r));
      continue;
    }
    res.verdicts.push_back(make_verdict(label("short-sum", b), r.worst_short_sum_residual, tol, json::array({to_json(r)})));
    if (r.worst_sqrt5_residual) {
      res.verdicts.push_back(make_verdict(label("sqrt5", b), *r.worst_sqrt5_residual, tol));
      res.verdicts.push_back(make_verdict(label("fourth-moment", b), *r.fourth_moment_rel_err, tol_or(cfg, 1e-9)));
    }
  }
  return res;
}

inline command_result run_table1(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "mean_ratio", "std_ratio", "std_ln_b", "std_log10_b", "mean_phase_cos", "count"};
  const double tol = tol_or(cfg, table1_tolerance);
  for (std::int64_t b : cfg.bases) {
    const packet_stats st = compute_packet_stats(b);
    res.rows.rows.push_back({num(b), num(st.mean_ratio), num(st.std_ratio), num(st.std_ln_b), num(st.std_log10_b),
                             num(st.mean_phase_cos), num(st.count)});
    if (table1_lookup(b)) {
      const table1_comparison c = compare_with_table1(st);
      res.verdicts.push_back(make_verdict(label("table1", b), c.worst_error(), tol, json::array({to_json(st), to_json(c)})));
    } else {
      res.reports.push_back(to_json(st));
    }
  }
  return res;
}

inline command_result run_packet(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "j", "ratio", "phase_cos", "delta_re", "delta_im", "L1_re", "L1_im", "probe_re", "probe_im"};
  for (std::int64_t b : cfg.bases) {
    packet_builder builder(b);
    for (const character& chi : enumerate_family(builder.groups().mod_b2, family::primitive_odd)) {
      const packet_record r = builder.delta(chi);
      const auto probe = builder.normalization_probe(chi);
      json j = to_json(b, r);
      j["probe"] = probe ? complex_json(*probe) : json("UNDEFINED");
      res.reports.push_back(j);
      res.rows.rows.push_back({num(b), num(r.chi_index), num(r.ratio), num(r.phase_cos), num(r.delta.real()),
                               num(r.delta.imag()), num(r.l1.real()), num(r.l1.imag()),
                               probe ? num(probe->real()) : "UNDEFINED", probe ? num(probe->imag()) : "UNDEFINED"});
    }
  }
  return res;
}

inline command_result run_lvalue(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "j", "closed_re", "closed_im", "series_re", "series_im", "N", "tail_bound", "excess"};
  const double tol = tol_or(cfg, 1e-9);
  for (std::int64_t b : cfg.bases) {
    const group_ptr group = build_group_pair(b).mod_b2;
    const std::int64_t n_terms = std::max(cfg.cutoff.value_or(default_cutoff), group->modulus() * group->modulus());
    json details = json::array();
    double worst = 0.0;
    for (const character& chi : enumerate_family(group, family::primitive_odd)) {
      const l_value closed = l_value_closed(chi);
      const l_value series = l_value_series(chi, n_terms);
      const double excess = std::max(0.0, std::abs(closed.value - series.value) - series.tail_bound);
      worst = std::max(worst, excess);
      details.push_back(to_json(b, closed));
      details.push_back(to_json(b, series));
      res.rows.rows.push_back({num(b), num(chi.index()), num(closed.value.real()), num(closed.value.imag()),
                               num(series.value.real()), num(series.value.imag()), num(n_terms),
                               num(series.tail_bound), num(excess)});
    }
    res.verdicts.push_back(make_verdict(label("lvalue", b), worst, tol, details));
  }
  return res;
}

inline command_result run_classnumber(const run_config& cfg) {
  command_result res;
  res.rows.header = {"b", "D", "h_raw", "h_from_L", "h_from_forms"};
  for (std::int64_t b : cfg.bases) {
    const class_number_record r = class_number_check(b);
    res.rows.rows.push_back({num(b), num(r.discriminant), num(r.h_raw), num(r.h_from_l), num(r.h_from_forms)});
    const double mismatch = static_cast<double>(std::abs(r.h_from_l - r.h_from_forms));
    res.verdicts.push_back(make_verdict(label("classnumber", b), mismatch, tol_or(cfg, 0.5), json::array({to_json(r)})));
  }
  return res;
}

inline const table& prime_sum_header(table& t) {
  t.header = {"b", "s", "N", "F", "expansion_residual", "all_vs_primitive", "bound_lhs", "bound_rhs", "margin"};
  return t;
}

inline std::vector<std::string> prime_sum_row(const prime_sum_record& r) {
  return {num(r.base), num(r.s), num(r.cutoff), num(r.f_trunc.real()), num(r.expansion_residual),
          num(r.all_vs_primitive), num(r.bound_lhs), num(r.bound_rhs), num(r.margin)};
}

inline command_result run_prime_sums(const run_config& cfg, const std::vector<double>& exponents, bool expansion) {
  command_result res;
  prime_sum_header(res.rows);
  const std::int64_t cutoff = cfg.cutoff.value_or(default_cutoff);
  const prime_list primes = sieve_primes(cutoff);
  for (std::int64_t b : cfg.bases) {
    const collision_table table(build_group_pair(b).mod_b2);
    for (double s : exponents) {
      const prime_sum_record r = expansion ? verify_expansion(table, s, cutoff, primes)
                                           : cross_moment_bound(table, s, cutoff, primes);
      res.rows.rows.push_back(prime_sum_row(r));
      const std::string tag = label(expansion ? "expansion" : "cross-moment", b) + " s=" + format_double(s);
      if (expansion) {
        res.verdicts.push_back(make_verdict(tag, std::max(r.expansion_residual, r.all_vs_primitive),
                                            tol_or(cfg, 1e-9), json::array({to_json(r)})));
      } else {
        res.verdicts.push_back(make_verdict(tag, std::max(0.0, -r.margin), tol_or(cfg, 1e-10), json::array({to_json(r)})));
      }
    }
  }
  return res;
}

inline std::vector<std::int64_t> default_bases(const std::string& command) {
  if (command == "verify vanishing" || command == "verify encoding") return odd_primes_up_to(43);
  if (command == "verify moment") return {3, 5, 7, 13};
  if (command == "verify base5") return {5};
  if (command == "table1") return {5, 7, 13, 19, 31, 43};
  if (command == "classnumber") {
    std::vector<std::int64_t> out;
    for (std::int64_t p : odd_primes_up_to(163)) {
      if (p % 4 == 3 && p >= 7) out.push_back(p);
    }
    return out;
  }
  if (command == "cross-moment" || command == "expansion" || command == "packet" || command == "lvalue") return {5};
  if (command == "sweep") return {5, 7, 13};
  if (command == "dump-collision") return {3};
  return {3, 5, 7, 11, 13};
}

inline command_result dispatch(const run_config& cfg) {
  const std::string& c = cfg.command;
  if (c == "verify decompose") return run_decompose(cfg);
  if (c == "verify steps") return run_steps(cfg);
  if (c == "verify vanishing") return run_vanishing(cfg);
  if (c == "verify moment") return run_moment(cfg);
  if (c == "verify encoding") return run_encoding(cfg);
  if (c == "verify base5") return run_base5(cfg);
  if (c == "table1") return run_table1(cfg);
  if (c == "packet") return run_packet(cfg);
  if (c == "lvalue") return run_lvalue(cfg);
  if (c == "classnumber") return run_classnumber(cfg);
  if (c == "cross-moment") return run_prime_sums(cfg, {cfg.s.value_or(1.2)}, false);
  if (c == "expansion") return run_prime_sums(cfg, {cfg.s.value_or(1.2)}, true);
  if (c == "sweep") {
    return run_prime_sums(cfg, cfg.s ? std::vector<double>{*cfg.s} : std::vector<double>{0.8, 1.0, 1.2, 1.5}, false);
  }
  throw usage_error("unknown command '" + c + "'");
}

inline void write_report(std::ostream& os, const run_config& cfg, const command_result& res) {
  bool all_passed = true;
  for (const auto& v : res.verdicts) all_passed = all_passed && v.passed;
  switch (cfg.format) {
    case output_format::json: {
      json doc{{"command", cfg.command}, {"bases", cfg.bases}, {"passed", all_passed}};
      json verdicts = json::array();
      for (const auto& v : res.verdicts) verdicts.push_back(to_json(v));
      doc["verdicts"] = verdicts;
      doc["reports"] = res.reports;
      os << to_json_string(doc);
      return;
    }
    case output_format::csv:
      write_csv(os, res.rows);
      return;
    case output_format::pretty:
      for (const auto& v : res.verdicts) {
        os << (v.passed ? "PASS  " : "FAIL  ") << v.check << "  worst=" << format_double(v.worst_residual)
           << "  tol=" << format_double(v.tolerance) << '\n';
      }
      if (!res.rows.rows.empty()) {
        os << '\n';
        write_aligned(os, res.rows);
      }
      return;
  }
}

inline std::string extension(output_format f) {
  switch (f) {
    case output_format::json: return ".json";
    case output_format::csv: return ".csv";
    case output_format::pretty: return ".txt";
  }
  return ".txt";
}

/// Writes to --out, else $CSPEC_OUT_DIR/<command>.<ext>, else to out.
template <class Writer>
void emit(const run_config& cfg, const std::string& ext, std::ostream& out, Writer&& write) {
  std::optional<std::string> path = cfg.output_path;
  if (!path) {
    if (const char* dir = std::getenv(out_dir_env)) {
      std::string name = cfg.command;
      std::replace(name.begin(), name.end(), ' ', '-');
      path = (std::filesystem::path(dir) / (name + ext)).string();
    }
  }
  if (!path) {
    write(out);
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw usage_error("cannot open " + *path);
  write(file);
}

}  // namespace detail

/// Runs one command and writes its report. Returns 0 when every verdict
/// passes, 1 when any fails, 2 on a configuration error.
inline int run(run_config cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.bases.empty()) cfg.bases = detail::default_bases(cfg.command);
    for (std::int64_t b : cfg.bases) unit_group::check_base(b);
    if (cfg.tolerance && !(*cfg.tolerance > 0.0 && *cfg.tolerance <= 1e-3)) {
      throw usage_error("tolerance must lie in (0, 1e-3]");
    }

    if (cfg.command == "dump-collision") {
      // always CSV, one block per base
      std::ostringstream body;
      for (std::int64_t b : cfg.bases) write_collision_csv(body, collision_table(build_group_pair(b).mod_b2));
      detail::emit(cfg, ".csv", out, [&](std::ostream& os) { os << body.str(); });
      return 0;
    }

    const command_result res = detail::dispatch(cfg);
    detail::emit(cfg, detail::extension(cfg.format), out, [&](std::ostream& os) { detail::write_report(os, cfg, res); });

    for (const auto& v : res.verdicts) {
      if (!v.passed) return 1;
    }
    return 0;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

/// Parses argv and runs. stdout_is_terminal picks the default format.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                      bool stdout_is_terminal = false) {
  CLI::App app{"Collision-invariant spectrum verification"};
  app.require_subcommand(1);

  run_config cfg;
  std::optional<std::int64_t> base;
  std::vector<std::int64_t> bases;
  std::optional<std::string> format;

  auto add_options = [&](CLI::App* sub) {
    sub->add_option("--base", base, "single odd prime base");
    sub->add_option("--bases", bases, "comma-separated odd prime bases")->delimiter(',');
    sub->add_option("--tol", cfg.tolerance, "tolerance override, in (0, 1e-3]");
    sub->add_option("--cutoff", cfg.cutoff, "series or prime cutoff N");
    sub->add_option("--s", cfg.s, "real exponent s");
    sub->add_option("--out", cfg.output_path, "output file (overrides $" + std::string(out_dir_env) + ")");
    sub->add_option("--format", format, "json, csv or pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
  };

  std::vector<std::pair<CLI::App*, std::string>> leaves;
  CLI::App* verify = app.add_subcommand("verify", "exact identity checks");
  verify->require_subcommand(1);
  const std::pair<const char*, const char*> verify_leaves[] = {
      {"decompose", "Fourier coefficients factor through B1 and S_G"},
      {"steps", "residual of every intermediate step of the factorization"},
      {"vanishing", "even and imprimitive coefficients vanish"},
      {"moment", "second moment of L(1) weighted by |S_G|^2, and Parseval"},
      {"encoding", "|s_hat| recovered from |L(1)| and |S_G|"},
      {"base5", "short-sum identities and the b=5 fourth moment"}};
  for (const auto& [name, help] : verify_leaves) {
    CLI::App* sub = verify->add_subcommand(name, help);
    add_options(sub);
    leaves.emplace_back(sub, std::string("verify ") + name);
  }
  const std::pair<const char*, const char*> top_leaves[] = {
      {"table1", "packet ratio statistics against the reference table"},
      {"packet", "per-character packet Delta, ratio and phase"},
      {"lvalue", "closed-form L(1) against the truncated series"},
      {"classnumber", "h(-b) from L(1) against reduced forms"},
      {"cross-moment", "truncated prime-sum bound"},
      {"expansion", "character expansion of the truncated prime sum"},
      {"sweep", "cross-moment bound over several exponents"},
      {"dump-collision", "CSV of S and its centered values"}};
  for (const auto& [name, help] : top_leaves) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_options(sub);
    leaves.emplace_back(sub, name);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [sub, name] : leaves) {
    if (sub->parsed()) cfg.command = name;
  }
  if (base) cfg.bases.push_back(*base);
  cfg.bases.insert(cfg.bases.end(), bases.begin(), bases.end());
  if (format) {
    cfg.format = *format == "json" ? output_format::json : *format == "csv" ? output_format::csv : output_format::pretty;
  } else {
    cfg.format = stdout_is_terminal ? output_format::pretty : output_format::json;
  }
  return run(cfg, out, err);
}

}  // namespace cspec::cli

#endif  // CSPEC_CLI_HPP
