#pragma once

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mntkit/families.hpp"
#include "mntkit/integer.hpp"
#include "mntkit/intpoly.hpp"
#include "mntkit/pell.hpp"
#include "mntkit/search.hpp"

namespace mnt {

using json = nlohmann::ordered_json;

/// Integers that fit in 64 bits are JSON numbers; larger ones are decimal strings.
inline json to_json(const Integer& n) {
  if (fits_i64(n)) return to_i64(n);
  return n.get_str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline json to_json(const QuadPoly& p) { return json::array({to_json(p.c0), to_json(p.c1), to_json(p.c2)}); }
inline json to_json(const LinPoly& p) { return json::array({to_json(p.b), to_json(p.a)}); }

inline QuadPoly quad_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("quadratic must be [c0, c1, c2]");
  return {integer_from_json(j[2]), integer_from_json(j[1]), integer_from_json(j[0])};
}

inline LinPoly lin_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("trace must be [b, a]");
  return {integer_from_json(j[1]), integer_from_json(j[0])};
}

inline json to_json(const Family& f) {
  json j;
  j["k"] = value(f.k);
  j["h"] = to_json(f.h);
  j["d"] = to_json(f.d);
  j["t"] = to_json(f.t);
  j["r"] = to_json(f.r);
  j["q"] = to_json(f.q);
  return j;
}

/// Parses a family record and rejects it unless every family check passes.
inline Family family_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("family must be a JSON object");
  for (const char* key : {"k", "h", "d", "t", "r", "q"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("family is missing field '") + key + "'");
  }
  Family f;
  f.k = embedding_degree(j["k"].get<long>());
  f.h = integer_from_json(j["h"]);
  f.d = integer_from_json(j["d"]);
  f.t = lin_from_json(j["t"]);
  f.r = quad_from_json(j["r"]);
  f.q = quad_from_json(j["q"]);
  FamilyReport rep = verify_family(f);
  if (!rep.ok()) {
    std::string names;
    for (const auto& n : rep.failures()) names += (names.empty() ? "" : ", ") + n;
    throw std::invalid_argument("invalid family (" + names + ")");
  }
  return f;
}

inline std::string format_double(double v, int precision = 6) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

inline json to_json(const CurveInstance& c) {
  json j;
  j["x"] = to_json(c.x);
  j["q"] = to_json(c.q);
  j["r"] = to_json(c.r);
  j["t"] = to_json(c.t);
  j["h"] = to_json(c.h);
  j["k"] = value(c.k);
  j["D"] = to_json(c.D);
  j["m"] = to_json(c.m);
  j["rho"] = format_double(c.rho);
  j["probable"] = c.probable;
  return j;
}

inline json to_json(const PellInstance& p) {
  json j;
  j["w0"] = to_json(p.w0);
  j["w1"] = to_json(p.w1);
  j["w2"] = to_json(p.w2);
  j["u"] = to_json(p.u);
  j["f"] = to_json(p.f);
  return j;
}

namespace csv {

/// Polynomials go out as quoted ascending coefficient lists, e.g. "[1,1,1]".
inline std::string poly(const QuadPoly& p) {
  return "\"[" + p.c0.get_str() + "," + p.c1.get_str() + "," + p.c2.get_str() + "]\"";
}
inline std::string poly(const LinPoly& p) { return "\"[" + p.b.get_str() + "," + p.a.get_str() + "]\""; }

inline const char* family_header() { return "k,h,d,t,r,q"; }

inline std::string row(const Family& f) {
  std::ostringstream os;
  os << value(f.k) << ',' << f.h.get_str() << ',' << f.d.get_str() << ',' << poly(f.t) << ',' << poly(f.r) << ','
     << poly(f.q);
  return os.str();
}

inline const char* instance_header() { return "x,q,r,t,h,k,D,m,rho"; }

inline std::string row(const CurveInstance& c) {
  std::ostringstream os;
  os << c.x.get_str() << ',' << c.q.get_str() << ',' << c.r.get_str() << ',' << c.t.get_str() << ','
     << c.h.get_str() << ',' << value(c.k) << ',' << c.D.get_str() << ',' << c.m.get_str() << ','
     << format_double(c.rho);
  return os.str();
}

}  // namespace csv

}  // namespace mnt
