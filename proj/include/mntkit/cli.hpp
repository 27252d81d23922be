#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mntkit/counting.hpp"
#include "mntkit/families.hpp"
#include "mntkit/pell.hpp"
#include "mntkit/search.hpp"
#include "mntkit/serialize.hpp"
#include "mntkit/stats.hpp"
#include "mntkit/table2.hpp"

namespace mnt::cli {

enum class Format { json, csv, table };

struct RunConfig {
  std::string subcommand;
  int k = 0;
  long h = 0;
  long h_max = 0;
  std::optional<std::size_t> family_index;
  std::string family;  ///< inline JSON or a path to a JSON file
  std::size_t index = 0;
  std::string x_min = "-100", x_max = "100";
  std::string d_max = "1000";
  std::string g, f, limit = "1000000";
  std::string z = "1000";
  std::uint64_t euler_bound = 100000;
  std::string mode = "sweep";
  std::string checkpoints_path;
  bool builtin = false;
  Format format = Format::csv;
  bool format_given = false;
  std::string output;
  unsigned jobs = 1;
};

namespace detail {

inline json load_json(const std::string& text_or_path) {
  std::string text = text_or_path;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty family argument");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text_or_path);
    if (!in) throw std::invalid_argument("cannot read family file " + text_or_path);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

/// The family named on the command line: --family (object, or array with
/// --index), or --k/--h/--family-index into the generated families of cofactor h.
inline Family resolve_family(const RunConfig& cfg) {
  if (!cfg.family.empty()) {
    json j = load_json(cfg.family);
    if (j.is_array()) {
      if (cfg.index >= j.size()) throw std::invalid_argument("--index out of range");
      return family_from_json(j[cfg.index]);
    }
    return family_from_json(j);
  }
  if (cfg.k == 0 || cfg.h <= 0 || !cfg.family_index) {
    throw std::invalid_argument("select a family with --family, or with --k, --h and --family-index");
  }
  auto fams = families_with_cofactor(embedding_degree(cfg.k), cfg.h);
  if (*cfg.family_index >= fams.size()) {
    throw std::invalid_argument("--family-index out of range (" + std::to_string(fams.size()) + " families)");
  }
  return fams[*cfg.family_index];
}

inline Integer arg_integer(const std::string& text, const char* flag) {
  try {
    return parse_integer(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("invalid integer for ") + flag + ": " + text);
  }
}

inline Integer positive(const std::string& text, const char* flag) {
  Integer v = arg_integer(text, flag);
  if (sgn(v) <= 0) throw std::invalid_argument(std::string(flag) + " must be positive");
  return v;
}

inline void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline std::string pad(const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

inline void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) line += i + 1 == r.size() ? r[i] : pad(r[i], width[i] + 2);
    out << line << '\n';
  }
}

}  // namespace detail

inline void cmd_generate(const RunConfig& cfg, std::ostream& out) {
  auto fams = generate(embedding_degree(cfg.k), cfg.h_max);
  switch (cfg.format) {
    case Format::json: {
      json arr = json::array();
      for (const auto& f : fams) arr.push_back(to_json(f));
      detail::write_json(out, arr);
      break;
    }
    case Format::csv:
      out << csv::family_header() << '\n';
      for (const auto& f : fams) out << csv::row(f) << '\n';
      break;
    case Format::table: {
      std::vector<std::vector<std::string>> rows{{"h", "q(x)", "r(x)", "t(x)"}};
      for (const auto& f : fams) rows.push_back({f.h.get_str(), to_string(f.q), to_string(f.r), to_string(f.t)});
      detail::print_table(out, rows);
      break;
    }
  }
}

inline void cmd_count(const RunConfig& cfg, std::ostream& out) {
  const EmbeddingDegree k = embedding_degree(cfg.k);
  if (cfg.h <= 0) throw std::invalid_argument("--h must be positive");
  const auto h = static_cast<std::uint64_t>(cfg.h);
  std::uint64_t total = 0, total_oracle = 0;
  std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> rows;
  for (std::uint64_t d = 1; d <= 4 * h; ++d) {
    std::uint64_t a = n_d_formula(k, d), b = n_d_oracle(k, d);
    if (a != b) throw InvariantViolation("n-d-formula: formula and exhaustive count differ at d = " + std::to_string(d));
    rows.emplace_back(d, a, b);
    total += a;
    total_oracle += b;
  }
  if (cfg.format == Format::json) {
    json j;
    j["k"] = cfg.k;
    j["h"] = cfg.h;
    json arr = json::array();
    for (auto [d, a, b] : rows) arr.push_back({{"d", d}, {"n_d", a}, {"oracle", b}});
    j["rows"] = arr;
    j["candidate_total"] = total;
    j["family_total"] = family_total(k, h);
    detail::write_json(out, j);
    return;
  }
  out << "d,n_d,oracle\n";
  for (auto [d, a, b] : rows) out << d << ',' << a << ',' << b << '\n';
  out << "total," << total << ',' << total_oracle << '\n';
}

inline void cmd_reduce_pell(const RunConfig& cfg, std::ostream& out) {
  PellInstance inst = reduce(detail::resolve_family(cfg));
  if (cfg.format == Format::json) {
    detail::write_json(out, to_json(inst));
    return;
  }
  out << "w0,w1,w2,u,f\n"
      << inst.w0.get_str() << ',' << inst.w1.get_str() << ',' << inst.w2.get_str() << ',' << inst.u.get_str() << ','
      << inst.f.get_str() << '\n';
}

inline void cmd_solve_pell(const RunConfig& cfg, std::ostream& out) {
  const Integer g = detail::positive(cfg.g, "--g");
  const Integer f = detail::arg_integer(cfg.f, "--f");
  const Integer limit = detail::positive(cfg.limit, "--limit");
  if (sgn(f) == 0) throw std::invalid_argument("--f must be nonzero");
  std::vector<PellSolutionClass> reps;
  std::vector<PellSolution> sols;
  std::optional<PellUnit> unit;
  if (is_square(g)) {
    sols = mnt::detail::square_modulus_solutions(isqrt(g), f, limit);
  } else {
    unit = fundamental_unit(g);
    reps = class_representatives(g, f, *unit);
    for (auto& s : orbit_solutions(g, reps, *unit, OrbitBound::y, limit)) {
      if (sgn(s.m) >= 0) sols.push_back(std::move(s));
    }
  }
  if (cfg.format == Format::json) {
    json j;
    j["g"] = to_json(g);
    j["f"] = to_json(f);
    if (unit) j["unit"] = {{"T", to_json(unit->T)}, {"U", to_json(unit->U)}};
    json cl = json::array();
    for (const auto& c : reps) cl.push_back({{"y", to_json(c.y)}, {"m", to_json(c.m)}, {"ambiguous", is_ambiguous(c)}});
    j["classes"] = cl;
    json sl = json::array();
    for (const auto& s : sols) sl.push_back({{"y", to_json(s.y)}, {"m", to_json(s.m)}});
    j["solutions"] = sl;
    detail::write_json(out, j);
    return;
  }
  out << "kind,y,m,ambiguous\n";
  for (const auto& c : reps) out << "class," << c.y.get_str() << ',' << c.m.get_str() << ',' << (is_ambiguous(c) ? 1 : 0) << '\n';
  for (const auto& s : sols) out << "solution," << s.y.get_str() << ',' << s.m.get_str() << ",\n";
}

inline void cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Family fam = detail::resolve_family(cfg);
  const Integer x_min = detail::arg_integer(cfg.x_min, "--xmin");
  const Integer x_max = detail::arg_integer(cfg.x_max, "--xmax");
  const Integer d_max = detail::positive(cfg.d_max, "--dmax");
  if (x_min > x_max) throw std::invalid_argument("--xmin exceeds --xmax");
  std::vector<CurveInstance> found;
  if (cfg.mode == "sweep") {
    SweepResult res = sweep(fam, x_min, x_max, d_max, cfg.jobs);
    for (const auto& [reason, n] : res.skipped) err << "skipped " << n << " seeds: " << to_string(reason) << '\n';
    found = std::move(res.instances);
  } else if (cfg.mode == "pell") {
    found = pell_search_box(fam, x_min, x_max, d_max);
  } else {
    throw std::invalid_argument("--mode must be sweep or pell");
  }
  if (cfg.format == Format::json) {
    json arr = json::array();
    for (const auto& c : found) arr.push_back(to_json(c));
    detail::write_json(out, arr);
    return;
  }
  out << csv::instance_header() << '\n';
  for (const auto& c : found) out << csv::row(c) << '\n';
}

inline std::vector<Integer> checkpoint_values(const Integer& z) {
  std::vector<Integer> out;
  for (int shift = 4; shift >= 0; --shift) {
    Integer v = z >> shift;
    if (sgn(v) > 0 && (out.empty() || out.back() != v)) out.push_back(v);
  }
  return out;
}

inline void cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const Family fam = detail::resolve_family(cfg);
  const Integer z = detail::positive(cfg.z, "--z");
  const Integer x_max = detail::positive(cfg.x_max, "--xmax");
  DensityProfile prof = density_profile(fam, cfg.euler_bound);
  Census cen = census(fam, z, x_max, cfg.jobs);
  auto points = census_checkpoints(cen, checkpoint_values(z));

  auto write_checkpoints = [&](std::ostream& os) {
    os << "z,E\n";
    for (const auto& [zz, e] : points) os << zz.get_str() << ',' << e << '\n';
  };
  if (!cfg.checkpoints_path.empty()) {
    std::ofstream cp(cfg.checkpoints_path);
    if (!cp) throw std::invalid_argument("cannot write " + cfg.checkpoints_path);
    write_checkpoints(cp);
  }
  if (cfg.format == Format::csv) {
    write_checkpoints(out);
    return;
  }
  json j;
  j["family"] = to_json(fam);
  j["delta"] = to_json(prof.delta);
  j["u"] = to_json(prof.u);
  j["w0"] = to_json(prof.w0);
  j["w1"] = to_json(prof.w1);
  j["w2"] = to_json(prof.w2);
  json c = json::object(), rho = json::object();
  for (const auto& [p, v] : prof.C) c[std::to_string(p)] = v;
  for (const auto& [p, v] : prof.rho) rho[std::to_string(p)] = v;
  j["C"] = c;
  j["rho"] = rho;
  json adm;
  adm["modulus"] = to_json(prof.classes.modulus);
  adm["w2_prime"] = to_json(prof.classes.w2_prime);
  json cls = json::array();
  for (const auto& v : prof.classes.classes) cls.push_back(to_json(v));
  adm["classes"] = cls;
  adm["expected_count"] = to_json(prof.classes.expected_count);
  adm["split"] = prof.classes.split;
  j["admissible"] = adm;
  json eu;
  eu["P"] = prof.euler.at_P.P;
  eu["obstructed"] = prof.euler.obstructed;
  json obs = json::array();
  for (auto p : prof.euler.obstructing_primes) obs.push_back(p);
  eu["obstructing_primes"] = obs;
  eu["S1"] = to_decimal(prof.euler.at_P.S1);
  eu["S2"] = to_decimal(prof.euler.at_P.S2);
  eu["S0"] = to_decimal(prof.euler.at_P.S0);
  eu["P_half"] = prof.euler.at_half.P;
  eu["S0_half"] = to_decimal(prof.euler.at_half.S0);
  eu["delta"] = to_decimal(prof.euler.delta, 10);
  j["euler"] = eu;
  json ce;
  ce["z"] = to_json(z);
  ce["x_max"] = to_json(x_max);
  ce["E"] = cen.count;
  ce["indeterminate"] = cen.indeterminate;
  json cps = json::array();
  for (const auto& [zz, e] : points) cps.push_back({{"z", to_json(zz)}, {"E", e}});
  ce["checkpoints"] = cps;
  j["census"] = ce;
  detail::write_json(out, j);
}

inline void cmd_verify_table(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.builtin) throw std::invalid_argument("verify-table needs --builtin");
  auto audit = table2::audit();
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ";") + x;
    return s;
  };
  std::size_t flagged = 0;
  for (const auto& a : audit) flagged += a.printed.ok() ? 0 : 1;
  if (cfg.format == Format::json) {
    json arr = json::array();
    for (const auto& a : audit) {
      json j;
      j["k"] = a.row->k;
      j["h"] = a.row->h;
      j["q"] = a.row->q_text;
      j["r"] = a.row->r_text;
      j["t"] = a.row->t_text;
      j["printed_ok"] = a.printed.ok();
      j["failures"] = a.printed.failures();
      j["corrected_ok"] = a.corrected.ok();
      j["corrected_failures"] = a.corrected.failures();
      j["notes"] = a.corrected.notes;
      arr.push_back(j);
    }
    detail::write_json(out, {{"rows", arr}, {"flagged", flagged}, {"total", audit.size()}});
    return;
  }
  if (cfg.format == Format::csv) {
    out << "k,h,t,printed_ok,failures,corrected_ok,corrected_failures,notes\n";
    for (const auto& a : audit) {
      out << a.row->k << ',' << a.row->h << ",\"" << a.row->t_text << "\"," << (a.printed.ok() ? 1 : 0) << ','
          << join(a.printed.failures()) << ',' << (a.corrected.ok() ? 1 : 0) << ',' << join(a.corrected.failures())
          << ",\"" << join(a.corrected.notes) << "\"\n";
    }
    return;
  }
  std::vector<std::vector<std::string>> rows{{"row", "printed", "corrected", "notes"}};
  for (const auto& a : audit) {
    rows.push_back({table2::label(*a.row), a.printed.ok() ? "ok" : "FAIL " + join(a.printed.failures()),
                    a.corrected.ok() ? "ok" : "FAIL " + join(a.corrected.failures()), join(a.corrected.notes)});
  }
  detail::print_table(out, rows);
  out << "flagged " << flagged << " of " << audit.size() << " rows\n";
}

/// Parses argv, dispatches, and returns the process exit status:
/// 0 success, 1 invalid input, 2 internal invariant violation.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Near prime-order MNT curve families: generation, counting, Pell reduction, search, statistics",
               "mntkit"};
  app.require_subcommand(1, 1);
  // --h is the cofactor, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"table", Format::table}};
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format: json, csv or table")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--output", cfg.output, "Write data to this file instead of stdout");
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "Family record: inline JSON or a JSON file");
    sub->add_option("--index", cfg.index, "Entry to use when --family holds an array");
    sub->add_option("--k", cfg.k, "Embedding degree (3, 4 or 6)");
    sub->add_option("--h", cfg.h, "Cofactor");
    sub->add_option("--family-index", cfg.family_index, "Index among generated families with cofactor h");
  };

  auto* gen = app.add_subcommand("generate", "List every family with cofactor <= hmax");
  gen->add_option("--k", cfg.k, "Embedding degree (3, 4 or 6)")->required();
  gen->add_option("--hmax", cfg.h_max, "Largest cofactor")->required()->check(CLI::PositiveNumber);
  add_common(gen);

  auto* cnt = app.add_subcommand("count", "N_d for d <= 4h, by formula and by exhaustion");
  cnt->add_option("--k", cfg.k, "Embedding degree (3, 4 or 6)")->required();
  cnt->add_option("--h", cfg.h, "Cofactor")->required()->check(CLI::PositiveNumber);
  add_common(cnt);

  auto* red = app.add_subcommand("reduce-pell", "Pell data (w0, w1, w2, u, f) of a family");
  add_family(red);
  add_common(red);

  auto* sol = app.add_subcommand("solve-pell", "Classes and solutions of y^2 - g m^2 = f");
  sol->add_option("--g", cfg.g, "Modulus g")->required();
  sol->add_option("--f", cfg.f, "Right-hand side f")->required();
  sol->add_option("--limit", cfg.limit, "Largest |y| listed");
  add_common(sol);

  auto* sea = app.add_subcommand("search", "Concrete curves from a family");
  add_family(sea);
  sea->add_option("--xmin", cfg.x_min, "Smallest seed");
  sea->add_option("--xmax", cfg.x_max, "Largest seed");
  sea->add_option("--dmax", cfg.d_max, "Largest CM discriminant value D");
  sea->add_option("--mode", cfg.mode, "sweep or pell")->check(CLI::IsMember({"sweep", "pell"}));
  sea->add_option("--jobs", cfg.jobs, "Worker threads for sweep")->check(CLI::Range(1u, 1024u));
  add_common(sea);

  auto* sta = app.add_subcommand("stats", "Local densities, Euler constants and the census E(z)");
  add_family(sta);
  sta->add_option("--z", cfg.z, "Bound on D for the census");
  sta->add_option("--xmax", cfg.x_max, "Census seeds run over [-xmax, xmax]");
  sta->add_option("--euler-bound", cfg.euler_bound, "Truncate Euler products at primes <= P")
      ->check(CLI::Range(std::uint64_t{3}, std::uint64_t{100'000'000}));
  sta->add_option("--checkpoints", cfg.checkpoints_path, "Also write the (z, E(z)) CSV to this file");
  sta->add_option("--jobs", cfg.jobs, "Worker threads for the census")->check(CLI::Range(1u, 1024u));
  add_common(sta);

  auto* ver = app.add_subcommand("verify-table", "Audit the embedded table of published families");
  ver->add_flag("--builtin", cfg.builtin, "Use the embedded table");
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    CLI::App* failed = &app;
    for (auto* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return 1;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  cfg.format_given = chosen->count("--format") > 0;
  if (!cfg.format_given) cfg.format = cfg.subcommand == "stats" ? Format::json : Format::csv;

  std::ofstream file;
  std::ostream* sink = &out;
  try {
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw std::invalid_argument("cannot write " + cfg.output);
      sink = &file;
    }
    const std::map<std::string, std::function<void()>> commands{
        {"generate", [&] { cmd_generate(cfg, *sink); }},
        {"count", [&] { cmd_count(cfg, *sink); }},
        {"reduce-pell", [&] { cmd_reduce_pell(cfg, *sink); }},
        {"solve-pell", [&] { cmd_solve_pell(cfg, *sink); }},
        {"search", [&] { cmd_search(cfg, *sink, err); }},
        {"stats", [&] { cmd_stats(cfg, *sink); }},
        {"verify-table", [&] { cmd_verify_table(cfg, *sink); }},
    };
    commands.at(cfg.subcommand)();
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    err << "invariant violated: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace mnt::cli
