#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <variant>
#include <vector>

#include "dehncert/certify.hpp"
#include "dehncert/cusp.hpp"
#include "dehncert/hyp2.hpp"
#include "dehncert/io/json_io.hpp"
#include "dehncert/io/manifest.hpp"
#include "dehncert/tube.hpp"

namespace dehncert::app {

namespace fs = std::filesystem;
using io::json;

enum class Format { json, table };

struct Settings {
  Format format = Format::json;
  certify::Options options{};
  bool strict_schema = false;
  unsigned jobs = 1;
};

/// Everything a command produced; the CLI writes `out` to stdout, `err` to
/// stderr and exits with `exit_code` (0 all certified, 1 some hypothesis
/// failed, 2 input error).
struct Outcome {
  std::string out;
  std::string err;
  int exit_code = 0;
};

inline constexpr int kExitCertified = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInputError = 2;

namespace detail {

inline std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string pad(std::string s, std::size_t w) {
  s.append(s.size() < w ? w - s.size() : 1, ' ');
  return s;
}

inline void append_report_table(std::ostringstream& os, const certify::CertificateReport& r) {
  os << pad(r.query_id, 14) << pad(std::string(certify::to_string(r.theorem)), 18)
     << pad(std::string(certify::to_string(r.regime)), 15) << pad(std::string(certify::to_string(r.verdict)), 19)
     << r.binding_constraint << "\n";
  for (const auto& c : r.checks) {
    os << "    check  " << pad(c.name, 24) << pad(fmt_num(c.actual), 18)
       << pad(std::string(certify::to_string(c.relation)), 4) << pad(fmt_num(c.required), 18)
       << (c.pass ? "pass" : "FAIL") << "\n";
  }
  for (const auto& [k, v] : r.bounds) os << "    bound  " << pad(k, 30) << fmt_num(v) << "\n";
  for (const auto& a : r.assumptions) os << "    note   " << a << "\n";
}

inline std::string table_header() {
  return pad("query", 14) + pad("theorem", 18) + pad("regime", 15) + pad("verdict", 19) + "binding\n";
}

struct Tally {
  std::size_t certified = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;
  std::map<std::string, std::size_t> binding;

  void add(const certify::CertificateReport& r) {
    (r.certified() ? certified : failed)++;
    binding[r.binding_constraint]++;
  }

  json to_json() const {
    json counts = {{"certified", certified}, {"hypothesis_failed", failed}};
    json hist = json::object();
    for (const auto& [k, v] : binding) hist[k] = v;
    return {{"counts", counts}, {"errors", errors}, {"binding_constraints", hist}};
  }

  std::string to_table() const {
    std::ostringstream os;
    os << "summary: certified=" << certified << " hypothesis_failed=" << failed << " errors=" << errors << "\n";
    for (const auto& [k, v] : binding) os << "  binding " << pad(k, 30) << v << "\n";
    return os.str();
  }
};

inline Outcome input_error(const std::string& msg) { return {"", "error: " + msg + "\n", kExitInputError}; }

}  // namespace detail

// ---------------------------------------------------------------------------
// run: one manifest, one report per query
// ---------------------------------------------------------------------------

inline Outcome run_manifest(const io::Manifest& m, const Settings& s) {
  std::vector<certify::CertificateReport> reports;
  reports.reserve(m.queries.size());
  for (std::size_t i = 0; i < m.queries.size(); ++i) {
    try {
      reports.push_back(certify::certify(m.queries[i], s.options));
    } catch (const Error& e) {
      return detail::input_error("$.queries[" + std::to_string(i) + "] (" + m.queries[i].id + "): " + e.what());
    }
  }
  detail::Tally tally;
  for (const auto& r : reports) tally.add(r);

  Outcome o;
  o.exit_code = tally.failed == 0 ? kExitCertified : kExitFailed;
  if (s.format == Format::json) {
    json reps = json::array();
    for (const auto& r : reports) reps.push_back(io::to_json(r));
    json doc = {{"schema_version", io::kSchemaVersion},
                {"manifold", m.manifold.name},
                {"volume_regime", std::string(certify::to_string(m.manifold.volume_regime))},
                {"reports", std::move(reps)},
                {"summary", tally.to_json()}};
    o.out = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "manifold: " << m.manifold.name << " (" << certify::to_string(m.manifold.volume_regime)
       << " volume)\n"
       << detail::table_header();
    for (const auto& r : reports) detail::append_report_table(os, r);
    os << tally.to_table();
    o.out = os.str();
  }
  return o;
}

inline Outcome run_text(std::string_view text, std::string_view source, const Settings& s) {
  try {
    return run_manifest(io::parse_manifest(text, source, s.strict_schema), s);
  } catch (const Error& e) {
    return detail::input_error(e.what());
  }
}

inline Outcome run(const fs::path& manifest_path, const Settings& s) {
  try {
    return run_text(io::read_file(manifest_path), manifest_path.string(), s);
  } catch (const Error& e) {
    return detail::input_error(e.what());
  }
}

// ---------------------------------------------------------------------------
// batch: CSV rows or a directory of manifests
// ---------------------------------------------------------------------------

namespace detail {

struct Row {
  std::string source;
  std::variant<certify::CertificateQuery, std::string> query_or_error;
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw Error(ErrorKind::ValidationError, what + ": '" + s + "' is not a finite number");
  return v;
}

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "id",          "theorem",          "regime",  "epsilon", "J",           "link_length",  "geodesic_length",
      "geodesic_torsion", "L_total",     "L_sq",    "double_double", "volume_regime", "surface_kind",
      "horocycle_lengths"};
  return cols;
}

/// Builds a query from one CSV row by routing the cells through the same JSON
/// reader the manifest uses, so validation rules cannot drift apart.
inline certify::CertificateQuery query_from_csv(const std::vector<std::string>& header,
                                                const std::vector<std::string>& cells, const std::string& where,
                                                bool strict) {
  if (cells.size() != header.size())
    throw Error(ErrorKind::ValidationError, where + ": expected " + std::to_string(header.size()) +
                                                " cells, found " + std::to_string(cells.size()));
  json obj = json::object();
  std::optional<double> g_len, g_tau;
  std::optional<std::string> kind, horos, volume;
  const auto& known = csv_columns();
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto& col = header[i];
    const auto& cell = cells[i];
    if (std::find(known.begin(), known.end(), col) == known.end()) {
      if (strict) throw Error(ErrorKind::ValidationError, where + ": unknown column '" + col + "'");
      continue;
    }
    if (cell.empty()) continue;
    const std::string path = where + "." + col;
    if (col == "id" || col == "theorem" || col == "regime") {
      obj[col] = cell;
    } else if (col == "double_double") {
      if (cell != "true" && cell != "false" && cell != "1" && cell != "0")
        throw Error(ErrorKind::ValidationError, path + ": expected true/false");
      obj[col] = (cell == "true" || cell == "1");
    } else if (col == "geodesic_length") {
      g_len = parse_double(cell, path);
    } else if (col == "geodesic_torsion") {
      g_tau = parse_double(cell, path);
    } else if (col == "surface_kind") {
      kind = cell;
    } else if (col == "horocycle_lengths") {
      horos = cell;
    } else if (col == "volume_regime") {
      volume = cell;
    } else {
      obj[col] = parse_double(cell, path);
    }
  }
  io::ObjectReader o(obj, where);
  certify::CertificateQuery q;
  read_query_scalars(o, q);
  q.id = obj.value("id", where);
  if (g_len) q.geodesic = io::detail::at_path(where, [&] { return hyp2::ComplexLength::make(*g_len, g_tau.value_or(0.0)); });
  if (volume) q.volume = io::parse_enum<certify::VolumeRegime>(*volume, where + ".volume_regime");
  if (kind || horos) {
    certify::ObstructionInput ob;
    ob.surface_kind = io::parse_enum<certify::SurfaceKind>(kind.value_or(""), where + ".surface_kind");
    if (horos)
      for (const auto& h : split(*horos, ';'))
        ob.horocycle_lengths.push_back(parse_double(h, where + ".horocycle_lengths"));
    q.obstruction = std::move(ob);
  }
  return q;
}

inline std::vector<Row> rows_from_csv(std::string_view text, const std::string& source, bool strict) {
  std::vector<Row> rows;
  std::vector<std::string> header;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.empty() || line.front() == '#') continue;
    if (header.empty()) {
      header = split(line, ',');
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    try {
      rows.push_back({where, query_from_csv(header, split(line, ','), where, strict)});
    } catch (const Error& e) {
      rows.push_back({where, std::string(e.what())});
    }
  }
  if (header.empty()) throw Error(ErrorKind::ParseError, source + ": missing CSV header row");
  return rows;
}

inline std::vector<Row> rows_from_directory(const fs::path& dir, bool strict) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Row> rows;
  for (const auto& f : files) {
    try {
      auto m = io::load_manifest(f, strict);
      for (auto& q : m.queries) rows.push_back({f.filename().string() + ":" + q.id, std::move(q)});
    } catch (const Error& e) {
      rows.push_back({f.filename().string(), std::string(e.what())});
    }
  }
  return rows;
}

using RowResult = std::variant<certify::CertificateReport, std::string>;

inline RowResult evaluate_row(const Row& row, const certify::Options& opt) {
  if (const auto* err = std::get_if<std::string>(&row.query_or_error)) return *err;
  try {
    return certify::certify(std::get<certify::CertificateQuery>(row.query_or_error), opt);
  } catch (const Error& e) {
    return std::string(e.what());
  }
}

/// Certifies rows on up to `jobs` threads; results keep input order.
inline std::vector<RowResult> evaluate_rows(const std::vector<Row>& rows, const certify::Options& opt,
                                            unsigned jobs) {
  std::vector<RowResult> results(rows.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) results[i] = evaluate_row(rows[i], opt);
    return results;
  }
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < rows.size(); i += jobs) results[i] = evaluate_row(rows[i], opt);
    }));
  }
  for (auto& f : workers) f.get();
  return results;
}

}  // namespace detail

inline Outcome batch_rows(const std::vector<detail::Row>& rows, const Settings& s) {
  const auto results = detail::evaluate_rows(rows, s.options, s.jobs);
  detail::Tally tally;
  std::ostringstream err;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (const auto* r = std::get_if<certify::CertificateReport>(&results[i])) {
      tally.add(*r);
    } else {
      tally.errors++;
      err << "error: " << rows[i].source << ": " << std::get<std::string>(results[i]) << "\n";
    }
  }

  Outcome o;
  o.err = err.str();
  const std::size_t ok = tally.certified + tally.failed;
  if (ok == 0) {
    o.exit_code = kExitInputError;
    if (rows.empty()) o.err += "error: no rows\n";
  } else {
    o.exit_code = (tally.failed == 0 && tally.errors == 0) ? kExitCertified : kExitFailed;
  }

  if (s.format == Format::json) {
    json out_rows = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      json row = {{"row", i}, {"source", rows[i].source}};
      if (const auto* r = std::get_if<certify::CertificateReport>(&results[i]))
        row["report"] = io::to_json(*r);
      else
        row["error"] = std::get<std::string>(results[i]);
      out_rows.push_back(std::move(row));
    }
    json doc = {{"schema_version", io::kSchemaVersion}, {"rows", std::move(out_rows)}, {"summary", tally.to_json()}};
    o.out = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << detail::table_header();
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (const auto* r = std::get_if<certify::CertificateReport>(&results[i]))
        detail::append_report_table(os, *r);
      else
        os << detail::pad(rows[i].source, 14) << "ERROR " << std::get<std::string>(results[i]) << "\n";
    }
    os << tally.to_table();
    o.out = os.str();
  }
  return o;
}

inline Outcome batch(const fs::path& dir_or_csv, const Settings& s) {
  try {
    std::error_code ec;
    if (fs::is_directory(dir_or_csv, ec)) return batch_rows(detail::rows_from_directory(dir_or_csv, s.strict_schema), s);
    return batch_rows(detail::rows_from_csv(io::read_file(dir_or_csv), dir_or_csv.string(), s.strict_schema), s);
  } catch (const Error& e) {
    return detail::input_error(e.what());
  }
}

// ---------------------------------------------------------------------------
// eval: direct evaluation of a single function
// ---------------------------------------------------------------------------

namespace detail {

struct EvalFunction {
  std::string usage;
  std::size_t min_args;
  std::size_t max_args;
  std::function<json(const std::vector<std::string>&)> fn;
};

inline std::vector<double> numbers(const std::vector<std::string>& args, std::size_t from = 0) {
  std::vector<double> v;
  for (std::size_t i = from; i < args.size(); ++i) v.push_back(parse_double(args[i], "argument " + std::to_string(i + 1)));
  return v;
}

inline std::int64_t integer(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::ValidationError, what + ": '" + s + "' is not an integer");
  return v;
}

inline cusp::CuspSlope cusp_slope_args(const std::vector<std::string>& a) {
  const auto x = numbers({a.begin(), a.begin() + 4});
  return {{{x[0], x[1]}, {x[2], x[3]}, std::nullopt}, {integer(a[4], "p"), integer(a[5], "q")}};
}

// Evaluates the argument before any json is built: some compilers leak the
// partially built initializer list when an element throws.
inline json value_json(double v) { return json{{"value", v}}; }

inline json report_value(const certify::CertificateReport& r) { return {{"report", io::to_json(r)}}; }

inline const std::map<std::string, EvalFunction>& eval_table() {
  using certify::Regime;
  static const std::map<std::string, EvalFunction> table = {
      {"haze", {"haze <z>", 1, 1, [](const auto& a) { return value_json(tube::haze(numbers(a)[0])); }}},
      {"haze-inv", {"haze-inv <x>", 1, 1, [](const auto& a) { return value_json(tube::haze_inv(numbers(a)[0])); }}},
      {"bound-f",
       {"bound-f <z> <ell>", 2, 2,
        [](const auto& a) {
          const auto x = numbers(a);
          const double f = tube::bound_F(x[0], x[1]);
          return json{{"value", f},
                      {"four_pi_sq_F", 4.0 * std::numbers::pi * std::numbers::pi * f},
                      {"near_singular", tube::f_denominator(x[1]) < tube::kNearSingularDenominator}};
        }}},
      {"tube-radius",
       {"tube-radius <cone_angle> <core_length>", 2, 2,
        [](const auto& a) {
          const auto x = numbers(a);
          const auto t = tube::tube_radius_lower(x[0], x[1]);
          return json{{"visual_area", t.visual_area}, {"z_min", t.z_min},
                      {"radius_lower", t.unbounded ? json(nullptr) : json(t.radius_lower)}, {"unbounded", t.unbounded}};
        }}},
      {"tube-radius-area",
       {"tube-radius-area <visual_area>", 1, 1,
        [](const auto& a) {
          const auto t = tube::tube_radius_from_visual_area(numbers(a)[0]);
          return json{{"visual_area", t.visual_area}, {"z_min", t.z_min},
                      {"radius_lower", t.unbounded ? json(nullptr) : json(t.radius_lower)}, {"unbounded", t.unbounded}};
        }}},
      {"dist",
       {"dist <len_a> <tau_a> <len_b> <tau_b>", 4, 4,
        [](const auto& a) {
          const auto x = numbers(a);
          return value_json(hyp2::dist_complex_lengths(hyp2::ComplexLength::make(x[0], x[1]),
                                                           hyp2::ComplexLength::make(x[2], x[3])));
        }}},
      {"bound-from-dhyp",
       {"bound-from-dhyp <K> <len_ref>", 2, 2,
        [](const auto& a) {
          const auto x = numbers(a);
          const auto b = hyp2::bound_from_dhyp(x[0], x[1]);
          return json{{"dhyp_bound", b.dhyp_bound}, {"ratio_hi", b.ratio_hi}, {"ratio_lo", b.ratio_lo},
                      {"torsion_delta", b.torsion_delta}};
        }}},
      {"slope-length",
       {"slope-length <mu_re> <mu_im> <lambda_re> <lambda_im> <p> <q>", 6, 6,
        [](const auto& a) {
          const auto cs = cusp_slope_args(a);
          return value_json(cusp::slope_length(cs.cusp, cs.slope));
        }}},
      {"normalized-length",
       {"normalized-length <mu_re> <mu_im> <lambda_re> <lambda_im> <p> <q>", 6, 6,
        [](const auto& a) {
          const auto cs = cusp_slope_args(a);
          return value_json(cusp::normalized_length(cs.cusp, cs.slope).value());
        }}},
      {"total-normalized-length",
       {"total-normalized-length <L1> [L2 ...]", 1, 1024,
        [](const auto& a) {
          std::vector<cusp::NormalizedLength> ls;
          for (double v : numbers(a)) ls.emplace_back(v);
          const auto t = cusp::total_normalized_length(ls);
          return json{{"value", t.value()}, {"squared", t.squared()}};
        }}},
      {"double-double",
       {"double-double <L>", 1, 1,
        [](const auto& a) {
          return value_json(cusp::double_double_normalized(cusp::NormalizedLength(numbers(a)[0])).value());
        }}},
      {"meridian-floor",
       {"meridian-floor <L_sq> [area_floor]", 1, 2,
        [](const auto& a) {
          const auto x = numbers(a);
          return value_json(x.size() == 2 ? cusp::meridian_length_floor(x[0], x[1])
                                              : cusp::meridian_length_floor(x[0]));
        }}},
      {"hk-fillable",
       {"hk-fillable <L>", 1, 1,
        [](const auto& a) { return report_value(certify::hk_fillable(cusp::NormalizedLength(numbers(a)[0]))); }}},
      {"margulis-floor",
       {"margulis-floor <infinite|finite>", 1, 1,
        [](const auto& a) {
          return value_json(certify::margulis_floor(io::parse_enum<certify::VolumeRegime>(a[0], "volume_regime")));
        }}},
      {"obstruction",
       {"obstruction <sphere|disk|torus|annulus> [horocycle_length ...]", 1, 1024,
        [](const auto& a) {
          certify::ObstructionInput in{io::parse_enum<certify::SurfaceKind>(a[0], "surface_kind"), numbers(a, 1)};
          return report_value(certify::obstruction_area_test(in));
        }}},
      {"drill-threshold",
       {"drill-threshold <tame|finite_volume> <epsilon> <J>", 3, 3,
        [](const auto& a) {
          const auto r = io::parse_enum<Regime>(a[0], "regime");
          const auto x = numbers(a, 1);
          return value_json(certify::max_link_length(r, x[0], x[1]));
        }}},
      {"fill-threshold",
       {"fill-threshold <tame|finite_volume> <epsilon> <J>", 3, 3,
        [](const auto& a) {
          const auto r = io::parse_enum<Regime>(a[0], "regime");
          const auto x = numbers(a, 1);
          return value_json(certify::required_fill_lsq(r, x[0], x[1]));
        }}},
  };
  return table;
}

}  // namespace detail

inline std::string eval_usage() {
  std::string s = "eval functions:\n";
  for (const auto& [name, f] : detail::eval_table()) s += "  " + f.usage + "\n";
  return s;
}

inline Outcome eval(const std::string& function, const std::vector<std::string>& args, const Settings& s) {
  const auto& table = detail::eval_table();
  const auto it = table.find(function);
  if (it == table.end()) return detail::input_error("unknown eval function '" + function + "'\n" + eval_usage());
  const auto& f = it->second;
  if (args.size() < f.min_args || args.size() > f.max_args) return detail::input_error("usage: eval " + f.usage);
  json result;
  try {
    result = f.fn(args);
  } catch (const Error& e) {
    return detail::input_error(e.what());
  }

  Outcome o;
  if (result.contains("report"))
    o.exit_code = result["report"]["verdict"] == "certified" ? kExitCertified : kExitFailed;
  if (s.format == Format::json) {
    json doc = {{"function", function}, {"args", args}, {"result", result}};
    o.out = doc.dump(2) + "\n";
  } else if (result.contains("report")) {
    std::ostringstream os;
    os << detail::table_header();
    detail::append_report_table(os, io::report_from_json(result["report"]));
    o.out = os.str();
  } else {
    std::ostringstream os;
    for (auto el = result.begin(); el != result.end(); ++el) {
      os << el.key() << " = ";
      if (el->is_number_float())
        os << detail::fmt_num(el->get<double>());
      else
        os << el->dump();
      os << "\n";
    }
    o.out = os.str();
  }
  return o;
}

}  // namespace dehncert::app
