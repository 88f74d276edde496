#pragma once

// JSON encoding of reports and queries. Complex numbers are [re, im] pairs;
// lengths are hyperbolic units and angles radians.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dehncert/certify.hpp"
#include "dehncert/error.hpp"

namespace dehncert::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// enum <-> string
// ---------------------------------------------------------------------------

template <class E>
struct EnumNames;

template <>
struct EnumNames<certify::Theorem> {
  static constexpr std::string_view what = "theorem";
  static constexpr certify::Theorem all[] = {
      certify::Theorem::drill_bilip, certify::Theorem::fill_bilip,  certify::Theorem::short_drill,
      certify::Theorem::short_fill,  certify::Theorem::hk_fillable, certify::Theorem::six_theorem,
      certify::Theorem::obstruction_area};
};
template <>
struct EnumNames<certify::Regime> {
  static constexpr std::string_view what = "regime";
  static constexpr certify::Regime all[] = {certify::Regime::tame, certify::Regime::finite_volume};
};
template <>
struct EnumNames<certify::VolumeRegime> {
  static constexpr std::string_view what = "volume_regime";
  static constexpr certify::VolumeRegime all[] = {certify::VolumeRegime::infinite, certify::VolumeRegime::finite};
};
template <>
struct EnumNames<certify::Verdict> {
  static constexpr std::string_view what = "verdict";
  static constexpr certify::Verdict all[] = {certify::Verdict::certified, certify::Verdict::hypothesis_failed};
};
template <>
struct EnumNames<certify::Relation> {
  static constexpr std::string_view what = "relation";
  static constexpr certify::Relation all[] = {certify::Relation::lt, certify::Relation::le, certify::Relation::gt,
                                              certify::Relation::ge};
};
template <>
struct EnumNames<certify::SurfaceKind> {
  static constexpr std::string_view what = "surface_kind";
  static constexpr certify::SurfaceKind all[] = {certify::SurfaceKind::sphere, certify::SurfaceKind::disk,
                                                 certify::SurfaceKind::torus, certify::SurfaceKind::annulus};
};

template <class E>
E parse_enum(std::string_view s, const std::string& path) {
  for (E e : EnumNames<E>::all)
    if (certify::to_string(e) == s) return e;
  std::string allowed;
  for (E e : EnumNames<E>::all) allowed += (allowed.empty() ? "" : ", ") + std::string(certify::to_string(e));
  throw Error(ErrorKind::ValidationError,
              path + ": unknown " + std::string(EnumNames<E>::what) + " '" + std::string(s) + "' (expected one of " +
                  allowed + ")");
}

// ---------------------------------------------------------------------------
// Field access with path diagnostics
// ---------------------------------------------------------------------------

/// Wraps a JSON object and records which keys were read so that strict mode
/// can reject anything left over.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  const std::string& path() const { return path_; }
  std::string at(std::string_view key) const { return path_ + "." + std::string(key); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ValidationError, path_ + ": " + msg);
  }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& need(std::string_view key) {
    const json* v = find(key);
    if (!v) throw Error(ErrorKind::ValidationError, at(key) + ": missing required field");
    return *v;
  }

  std::optional<double> number(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    return as_number(*v, at(key));
  }

  double need_number(std::string_view key) { return as_number(need(key), at(key)); }

  std::optional<std::string> string(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw Error(ErrorKind::ValidationError, at(key) + ": expected a string");
    return v->get<std::string>();
  }

  std::string need_string(std::string_view key) {
    auto s = string(key);
    if (!s) throw Error(ErrorKind::ValidationError, at(key) + ": missing required field");
    return *s;
  }

  std::optional<bool> boolean(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) throw Error(ErrorKind::ValidationError, at(key) + ": expected a boolean");
    return v->get<bool>();
  }

  std::int64_t need_integer(std::string_view key) {
    const json& v = need(key);
    if (!v.is_number_integer()) throw Error(ErrorKind::ValidationError, at(key) + ": expected an integer");
    return v.get<std::int64_t>();
  }

  const json& need_array(std::string_view key) {
    const json& v = need(key);
    if (!v.is_array()) throw Error(ErrorKind::ValidationError, at(key) + ": expected an array");
    return v;
  }

  const json* array(std::string_view key) {
    const json* v = find(key);
    if (v && !v->is_array()) throw Error(ErrorKind::ValidationError, at(key) + ": expected an array");
    return v;
  }

  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw Error(ErrorKind::ValidationError, at(it.key()) + ": unknown field");
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw Error(ErrorKind::ValidationError, path + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw Error(ErrorKind::ValidationError, path + ": must be finite");
    return d;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline std::complex<double> parse_complex(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw Error(ErrorKind::ValidationError, path + ": expected [re, im]");
  return {ObjectReader::as_number(v[0], path + "[0]"), ObjectReader::as_number(v[1], path + "[1]")};
}

/// Turns nlohmann's byte offset into a line:column diagnostic.
inline json parse_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                           ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const certify::Check& c) {
  return {{"name", c.name},
          {"relation", std::string(certify::to_string(c.relation))},
          {"required", c.required},
          {"actual", c.actual},
          {"pass", c.pass}};
}

inline json to_json(const certify::CertificateReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json bounds = json::object();
  for (const auto& [k, v] : r.bounds) bounds[k] = v;
  return {{"query_id", r.query_id},
          {"theorem", std::string(certify::to_string(r.theorem))},
          {"regime", std::string(certify::to_string(r.regime))},
          {"theorem_name", r.theorem_name},
          {"verdict", std::string(certify::to_string(r.verdict))},
          {"binding_constraint", r.binding_constraint},
          {"checks", std::move(checks)},
          {"bounds", std::move(bounds)},
          {"assumptions", r.assumptions}};
}

inline certify::CertificateReport report_from_json(const json& j, const std::string& path = "report") {
  ObjectReader o(j, path);
  certify::CertificateReport r;
  r.query_id = o.need_string("query_id");
  r.theorem = parse_enum<certify::Theorem>(o.need_string("theorem"), o.at("theorem"));
  r.regime = parse_enum<certify::Regime>(o.need_string("regime"), o.at("regime"));
  r.theorem_name = o.need_string("theorem_name");
  r.verdict = parse_enum<certify::Verdict>(o.need_string("verdict"), o.at("verdict"));
  r.binding_constraint = o.need_string("binding_constraint");
  const json& checks = o.need_array("checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    ObjectReader c(checks[i], o.at("checks") + "[" + std::to_string(i) + "]");
    certify::Check ch;
    ch.name = c.need_string("name");
    ch.relation = parse_enum<certify::Relation>(c.need_string("relation"), c.at("relation"));
    ch.required = c.need_number("required");
    ch.actual = c.need_number("actual");
    const auto pass = c.boolean("pass");
    if (!pass) c.fail("missing 'pass'");
    ch.pass = *pass;
    c.reject_unknown();
    r.checks.push_back(std::move(ch));
  }
  const json& bounds = o.need("bounds");
  if (!bounds.is_object()) throw Error(ErrorKind::ValidationError, o.at("bounds") + ": expected an object");
  for (auto it = bounds.begin(); it != bounds.end(); ++it)
    r.bounds[it.key()] = ObjectReader::as_number(it.value(), o.at("bounds") + "." + it.key());
  const json& assumptions = o.need_array("assumptions");
  for (const auto& a : assumptions) {
    if (!a.is_string()) throw Error(ErrorKind::ValidationError, o.at("assumptions") + ": expected strings");
    r.assumptions.push_back(a.get<std::string>());
  }
  o.reject_unknown();
  return r;
}

inline json to_json(const certify::ObstructionInput& o) {
  return {{"surface_kind", std::string(certify::to_string(o.surface_kind))},
          {"horocycle_lengths", o.horocycle_lengths}};
}

inline certify::ObstructionInput obstruction_from_json(const json& j, const std::string& path, bool strict) {
  ObjectReader o(j, path);
  certify::ObstructionInput in;
  in.surface_kind = parse_enum<certify::SurfaceKind>(o.need_string("surface_kind"), o.at("surface_kind"));
  const json& hs = o.need_array("horocycle_lengths");
  for (std::size_t i = 0; i < hs.size(); ++i)
    in.horocycle_lengths.push_back(
        ObjectReader::as_number(hs[i], o.at("horocycle_lengths") + "[" + std::to_string(i) + "]"));
  if (const auto m = o.number("punctures")) {
    if (*m != static_cast<double>(in.horocycle_lengths.size()))
      o.fail("punctures must equal the number of horocycle lengths");
  }
  if (strict) o.reject_unknown();
  return in;
}

}  // namespace dehncert::io
