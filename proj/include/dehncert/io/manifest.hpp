#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dehncert/certify.hpp"
#include "dehncert/io/json_io.hpp"

namespace dehncert::io {

struct GeodesicRecord {
  std::string id;
  hyp2::ComplexLength length;
};

struct CuspRecord {
  std::string id;
  cusp::CuspCrossSection section;
};

struct SlopeRecord {
  std::string id;
  std::string cusp_id;
  cusp::SlopeClass slope;
};

struct Manifold {
  std::string name;
  certify::VolumeRegime volume_regime = certify::VolumeRegime::infinite;
  std::vector<GeodesicRecord> geodesics;
  std::vector<CuspRecord> cusps;
  std::vector<SlopeRecord> slopes;
};

/// A manifold description plus the certificate queries to run against it.
/// Queries refer to geodesics and slopes by id; references are resolved here.
struct Manifest {
  Manifold manifold;
  std::vector<certify::CertificateQuery> queries;
};

namespace detail {

/// Re-raises a domain error from the core library as a validation error
/// anchored at the offending manifest path.
template <class Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError || e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ValidationError, path + ": " + e.what());
  }
}

inline std::string indexed(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

}  // namespace detail

/// Parses the fields shared by manifest queries and batch rows. References
/// (geodesic ids, slope ids) are handled by the caller.
inline void read_query_scalars(ObjectReader& o, certify::CertificateQuery& q) {
  q.theorem = parse_enum<certify::Theorem>(o.need_string("theorem"), o.at("theorem"));
  if (auto r = o.string("regime")) q.regime = parse_enum<certify::Regime>(*r, o.at("regime"));
  q.epsilon = o.number("epsilon");
  q.J = o.number("J");
  q.link_length = o.number("link_length");
  const auto l_total = o.number("L_total");
  const auto l_sq = o.number("L_sq");
  if (l_total && l_sq) o.fail("give either L_total or L_sq, not both");
  if (l_total) q.L_total = detail::at_path(o.at("L_total"), [&] { return cusp::NormalizedLength(*l_total); });
  if (l_sq) q.L_total = detail::at_path(o.at("L_sq"), [&] { return cusp::NormalizedLength::from_squared(*l_sq); });
  q.double_double = o.boolean("double_double").value_or(false);
}

inline Manifest manifest_from_json(const json& root, bool strict) {
  ObjectReader top(root, "$");
  const double version = top.need_number("schema_version");
  if (version != kSchemaVersion)
    top.fail("unsupported schema_version " + std::to_string(version) + " (expected " +
             std::to_string(kSchemaVersion) + ")");

  Manifest m;
  ObjectReader mf(top.need("manifold"), top.at("manifold"));
  m.manifold.name = mf.need_string("name");
  m.manifold.volume_regime =
      parse_enum<certify::VolumeRegime>(mf.need_string("volume_regime"), mf.at("volume_regime"));

  std::map<std::string, std::size_t> geodesic_index, cusp_index, slope_index;
  auto claim_id = [](std::map<std::string, std::size_t>& index, const std::string& id, std::size_t i,
                     const std::string& path) {
    if (!index.emplace(id, i).second) throw Error(ErrorKind::ValidationError, path + ": duplicate id '" + id + "'");
  };

  if (const json* gs = mf.array("geodesics")) {
    for (std::size_t i = 0; i < gs->size(); ++i) {
      const auto path = detail::indexed(mf.at("geodesics"), i);
      ObjectReader g((*gs)[i], path);
      GeodesicRecord rec{g.need_string("id"), {}};
      const double len = g.need_number("length");
      const double tau = g.number("torsion").value_or(0.0);
      rec.length = detail::at_path(path, [&] { return hyp2::ComplexLength::make(len, tau); });
      if (strict) g.reject_unknown();
      claim_id(geodesic_index, rec.id, m.manifold.geodesics.size(), path);
      m.manifold.geodesics.push_back(std::move(rec));
    }
  }
  if (const json* cs = mf.array("cusps")) {
    for (std::size_t i = 0; i < cs->size(); ++i) {
      const auto path = detail::indexed(mf.at("cusps"), i);
      ObjectReader c((*cs)[i], path);
      CuspRecord rec;
      rec.id = c.need_string("id");
      rec.section.mu = parse_complex(c.need("mu"), c.at("mu"));
      rec.section.lambda = parse_complex(c.need("lambda"), c.at("lambda"));
      rec.section.area_override = c.number("area");
      detail::at_path(path, [&] { rec.section.validate(); });
      if (strict) c.reject_unknown();
      claim_id(cusp_index, rec.id, m.manifold.cusps.size(), path);
      m.manifold.cusps.push_back(std::move(rec));
    }
  }
  if (const json* ss = mf.array("slopes")) {
    for (std::size_t i = 0; i < ss->size(); ++i) {
      const auto path = detail::indexed(mf.at("slopes"), i);
      ObjectReader s((*ss)[i], path);
      SlopeRecord rec;
      rec.id = s.need_string("id");
      rec.cusp_id = s.need_string("cusp_id");
      rec.slope = {s.need_integer("p"), s.need_integer("q")};
      detail::at_path(path, [&] { rec.slope.validate(); });
      if (!cusp_index.count(rec.cusp_id)) s.fail("cusp_id '" + rec.cusp_id + "' does not name a cusp");
      if (strict) s.reject_unknown();
      claim_id(slope_index, rec.id, m.manifold.slopes.size(), path);
      m.manifold.slopes.push_back(std::move(rec));
    }
  }
  if (strict) mf.reject_unknown();

  const json& qs = top.need_array("queries");
  std::map<std::string, std::size_t> query_index;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto path = detail::indexed(top.at("queries"), i);
    ObjectReader o(qs[i], path);
    certify::CertificateQuery q;
    q.id = o.string("id").value_or("q" + std::to_string(i));
    claim_id(query_index, q.id, i, path);
    read_query_scalars(o, q);
    q.volume = m.manifold.volume_regime;
    if (auto gid = o.string("geodesic")) {
      auto it = geodesic_index.find(*gid);
      if (it == geodesic_index.end()) o.fail("geodesic '" + *gid + "' does not name a geodesic");
      q.geodesic = m.manifold.geodesics[it->second].length;
    }
    if (const json* sl = o.array("slopes")) {
      for (std::size_t k = 0; k < sl->size(); ++k) {
        const auto& v = (*sl)[k];
        if (!v.is_string()) o.fail("slopes[" + std::to_string(k) + "] must be a slope id");
        auto it = slope_index.find(v.get<std::string>());
        if (it == slope_index.end()) o.fail("slope '" + v.get<std::string>() + "' does not name a slope");
        const auto& srec = m.manifold.slopes[it->second];
        q.slopes.push_back({m.manifold.cusps[cusp_index.at(srec.cusp_id)].section, srec.slope});
      }
    }
    if (const json* ob = o.find("obstruction")) q.obstruction = obstruction_from_json(*ob, o.at("obstruction"), strict);
    if (strict) o.reject_unknown();
    m.queries.push_back(std::move(q));
  }
  if (strict) top.reject_unknown();
  return m;
}

inline Manifest parse_manifest(std::string_view text, std::string_view source, bool strict) {
  return manifest_from_json(parse_text(text, source), strict);
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, p.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Manifest load_manifest(const std::filesystem::path& p, bool strict) {
  return parse_manifest(read_file(p), p.string(), strict);
}

}  // namespace dehncert::io
