#include "skewgroup/json_io.hpp"

#include <fstream>
#include <sstream>

#include "skewgroup/error.hpp"

namespace skewgroup {

namespace {

Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational \"" + s + "\"");
  if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in \"" + s + "\"");
  r.canonicalize();
  return r;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Json field_spec_to_json(const FieldSpec& spec) {
  Json j;
  switch (spec.kind) {
    case FieldSpec::Kind::Rational: j["kind"] = "rational"; break;
    case FieldSpec::Kind::Prime:
      j["kind"] = "prime";
      j["p"] = spec.p.get_ui();
      break;
    case FieldSpec::Kind::Extension: {
      j["kind"] = "extension";
      j["base"] = field_spec_to_json(*spec.base);
      Json coeffs = Json::array();
      for (const auto& c : spec.minpoly) {
        if (c.size() == 1) {
          coeffs.push_back(rational_string(c[0]));
        } else {
          Json v = Json::array();
          for (const auto& x : c) v.push_back(rational_string(x));
          coeffs.push_back(v);
        }
      }
      j["minpoly"] = coeffs;
      break;
    }
  }
  return j;
}

FieldSpec field_spec_from_json(const Json& j) {
  const std::string kind = as_string(member(j, "kind"), "field kind");
  if (kind == "rational") return FieldSpec::rational();
  if (kind == "prime") {
    const Json& p = member(j, "p");
    if (p.is_number_unsigned()) return FieldSpec::prime(BigInt(std::to_string(p.get<std::uint64_t>())));
    if (p.is_string()) {
      BigInt v;
      if (v.set_str(p.get<std::string>(), 10) != 0) throw Error(ErrorCode::ParseError, "bad prime");
      return FieldSpec::prime(v);
    }
    throw Error(ErrorCode::ParseError, "\"p\" must be a positive integer");
  }
  if (kind == "cyclotomic") {
    const Json& n = member(j, "n");
    if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0 || n.get<std::uint64_t>() > 10000) {
      throw Error(ErrorCode::ParseError, "\"n\" must be a positive integer");
    }
    return Field::cyclotomic(n.get<unsigned>()).spec();
  }
  if (kind == "extension") {
    const FieldSpec base = field_spec_from_json(member(j, "base"));
    const Json& mp = member(j, "minpoly");
    if (!mp.is_array()) throw Error(ErrorCode::ParseError, "\"minpoly\" must be an array");
    std::vector<std::vector<Rational>> coeffs;
    for (const Json& c : mp) {
      std::vector<Rational> v;
      if (c.is_string()) {
        v.push_back(parse_rational(c.get<std::string>()));
      } else if (c.is_array()) {
        for (const Json& x : c) v.push_back(parse_rational(as_string(x, "minpoly coefficient")));
      } else {
        throw Error(ErrorCode::ParseError, "minpoly coefficients must be strings or arrays of strings");
      }
      coeffs.push_back(std::move(v));
    }
    return FieldSpec::extension(base, std::move(coeffs));
  }
  throw Error(ErrorCode::ParseError, "unknown field kind \"" + kind + "\"");
}

Json element_to_json(const FieldElement& x) {
  const auto strs = x.coeff_strings();
  if (strs.size() == 1) return strs[0];
  Json v = Json::array();
  for (const auto& s : strs) v.push_back(s);
  return v;
}

FieldElement element_from_json(const Field& f, const Json& j) {
  if (j.is_string()) return f.parse(j.get<std::string>());
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (j.is_array()) {
    std::vector<Rational> c;
    for (const Json& x : j) c.push_back(parse_rational(as_string(x, "coefficient")));
    if (c.size() != f.degree()) {
      throw Error(ErrorCode::ParseError, "coefficient vector has length " + std::to_string(c.size()) + ", field degree is " + std::to_string(f.degree()));
    }
    return f.from_coeffs(std::move(c));
  }
  throw Error(ErrorCode::ParseError, "field element must be a string or coefficient array");
}

Json matrix_to_json(const Mat2& m) {
  return Json::array({Json::array({element_to_json(m(0, 0)), element_to_json(m(0, 1))}),
                      Json::array({element_to_json(m(1, 0)), element_to_json(m(1, 1))})});
}

Mat2 matrix_from_json(const Field& f, const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2) {
    throw Error(ErrorCode::ParseError, "matrix must be [[a11,a12],[a21,a22]]");
  }
  return Mat2(element_from_json(f, j[0][0]), element_from_json(f, j[0][1]), element_from_json(f, j[1][0]),
              element_from_json(f, j[1][1]));
}

Json point_to_json(const ProjPoint& p) { return Json::array({element_to_json(p.x()), element_to_json(p.y())}); }

Json config_to_json(const LineConfig& cfg) {
  Json j;
  j["field"] = field_spec_to_json(cfg.field().spec());
  Json lines = Json::array();
  if (cfg.has_zero()) lines.push_back("zero");
  if (cfg.has_infinity()) lines.push_back("infinity");
  const Mat2 id = Mat2::identity(cfg.field());
  for (const Mat2& m : cfg.matrices()) {
    if (m == id) lines.push_back("identity");
    else lines.push_back(matrix_to_json(m));
  }
  j["lines"] = lines;
  return j;
}

LineConfig config_from_json(const Json& j) {
  const Field f = Field::make(field_spec_from_json(member(j, "field")));
  const Json& lines = member(j, "lines");
  if (!lines.is_array()) throw Error(ErrorCode::ParseError, "\"lines\" must be an array");
  bool zero = false;
  bool infinity = false;
  std::vector<Mat2> ms;
  for (const Json& l : lines) {
    if (l.is_string()) {
      const std::string s = l.get<std::string>();
      if (s == "zero") {
        if (zero) throw Error(ErrorCode::InvalidConfig, "L0 listed twice");
        zero = true;
      } else if (s == "infinity") {
        if (infinity) throw Error(ErrorCode::InvalidConfig, "Linf listed twice");
        infinity = true;
      } else if (s == "identity") {
        ms.push_back(Mat2::identity(f));
      } else {
        throw Error(ErrorCode::ParseError, "unknown line \"" + s + "\"");
      }
    } else {
      ms.push_back(matrix_from_json(f, l));
    }
  }
  return LineConfig(f, std::move(ms), zero, infinity);
}

Json family_to_json(const Family& fam) {
  Json j = config_to_json(fam.config);
  Json meta;
  meta["name"] = fam.name;
  Json params = Json::object();
  for (const auto& [k, v] : fam.params) params[k] = v;
  meta["params"] = params;
  meta["expected_order"] = fam.expected_order;
  meta["expected_label"] = fam.expected_label;
  j["family"] = meta;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace skewgroup
