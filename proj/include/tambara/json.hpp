#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tambara/automorphism.hpp"
#include "tambara/error.hpp"
#include "tambara/field.hpp"
#include "tambara/gring.hpp"
#include "tambara/subfield.hpp"

namespace tambara {

// Insertion-ordered so every document has a stable key order.
using Json = nlohmann::ordered_json;

namespace detail {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

inline std::string kind_of(const Json& j) { return get_field<std::string>(j, "kind"); }

}  // namespace detail

inline Json to_json(const Poly& f) {
  Json a = Json::array();
  for (auto c : f.coeffs()) a.push_back(c);
  return a;
}

/// Strict: coefficients already in [0, p) with no trailing zeros.
inline Poly poly_from_json(const Json& j, Coeff p) {
  if (!j.is_array()) throw UsageError("polynomial must be an integer array");
  std::vector<Coeff> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw UsageError("polynomial coefficient is not an integer");
    const auto x = v.get<std::int64_t>();
    if (x < 0 || x >= static_cast<std::int64_t>(p))
      throw UsageError("coefficient " + std::to_string(x) + " not reduced mod " + std::to_string(p));
    c.push_back(static_cast<Coeff>(x));
  }
  if (!c.empty() && c.back() == 0) throw UsageError("polynomial has trailing zero coefficients");
  return Poly::from_raw(p, std::move(c));
}

inline Json to_json(const FieldDescriptor& d) {
  Json j;
  if (d.kind == FieldDescriptor::Kind::GF) {
    j["kind"] = "gf";
    j["p"] = d.p;
    j["k"] = d.k;
    j["modulus"] = to_json(d.modulus);
  } else {
    j["kind"] = "ratfunc";
    j["p"] = d.p;
  }
  return j;
}

inline FieldDescriptor field_from_json(const Json& j) {
  const std::string kind = detail::kind_of(j);
  const auto p = detail::get_field<Coeff>(j, "p");
  if (kind == "ratfunc") return FieldDescriptor::ratfunc(p);
  if (kind != "gf") throw UsageError("unknown field kind \"" + kind + "\"");
  if (!is_prime(p)) throw UsageError("GF characteristic must be prime");
  const auto k = detail::get_field<unsigned>(j, "k");
  if (k == 0) throw UsageError("extension degree must be >= 1");
  if (j.contains("modulus")) return FieldDescriptor::gf(p, k, poly_from_json(j.at("modulus"), p));
  return FieldDescriptor::gf(p, k);
}

inline Json to_json(const FieldElem& x) {
  Json j;
  if (x.field()->is_finite()) {
    j["residue"] = to_json(x.num());
  } else {
    j["num"] = to_json(x.num());
    j["den"] = to_json(x.den());
  }
  return j;
}

/// Rejects anything not already in canonical form.
inline FieldElem element_from_json(const Json& j, const FieldRef& f) {
  if (f->is_finite()) {
    if (!j.is_object() || !j.contains("residue")) throw UsageError("GF element needs \"residue\"");
    const Poly r = poly_from_json(j.at("residue"), f->p);
    if (r.degree() >= static_cast<int>(f->k)) throw UsageError("residue not reduced mod the modulus");
    return FieldElem::residue(f, r);
  }
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw UsageError("F_p(t) element needs \"num\" and \"den\"");
  const Poly num = poly_from_json(j.at("num"), f->p);
  const Poly den = poly_from_json(j.at("den"), f->p);
  if (den.is_zero()) throw UsageError("zero denominator");
  FieldElem x = FieldElem::fraction(f, num, den);
  if (x.num() != num || x.den() != den) throw UsageError("fraction not in lowest terms with monic denominator");
  return x;
}

inline Json to_json(const FieldAut& a) {
  Json j;
  switch (a.kind) {
    case FieldAut::Kind::Trivial: j["kind"] = "trivial"; break;
    case FieldAut::Kind::Frobenius:
      j["kind"] = "frobenius";
      j["m"] = a.power;
      break;
    case FieldAut::Kind::Mobius:
      j["kind"] = "mobius";
      j["matrix"] = Json::array({a.matrix[0], a.matrix[1], a.matrix[2], a.matrix[3]});
      break;
  }
  return j;
}

inline FieldAut aut_from_json(const Json& j) {
  const std::string kind = detail::kind_of(j);
  if (kind == "trivial") return FieldAut::trivial();
  if (kind == "frobenius") return FieldAut::frobenius(detail::get_field<unsigned>(j, "m"));
  if (kind == "mobius") {
    const auto m = detail::get_field<std::vector<std::int64_t>>(j, "matrix");
    if (m.size() != 4) throw UsageError("Mobius matrix needs 4 entries");
    return FieldAut::mobius(m[0], m[1], m[2], m[3]);
  }
  throw UsageError("unknown automorphism kind \"" + kind + "\"");
}

inline Json to_json(const SubfieldDescriptor& s) {
  Json j;
  switch (s.kind) {
    case SubfieldDescriptor::Kind::Full: j["kind"] = "full"; break;
    case SubfieldDescriptor::Kind::FrobImage:
      j["kind"] = "frob_image";
      j["m"] = s.depth;
      break;
    case SubfieldDescriptor::Kind::Fixed: {
      j["kind"] = "fixed";
      Json a = Json::array();
      for (const auto& x : s.auts) a.push_back(to_json(x));
      j["auts"] = a;
      break;
    }
    case SubfieldDescriptor::Kind::Intersect: {
      j["kind"] = "intersect";
      Json a = Json::array();
      for (const auto& x : s.parts) a.push_back(to_json(x));
      j["parts"] = a;
      break;
    }
  }
  return j;
}

inline SubfieldDescriptor subfield_from_json(const Json& j) {
  const std::string kind = detail::kind_of(j);
  if (kind == "full") return SubfieldDescriptor::full();
  if (kind == "frob_image") return SubfieldDescriptor::frob_image(detail::get_field<unsigned>(j, "m"));
  if (kind == "fixed") {
    if (!j.contains("auts") || !j.at("auts").is_array()) throw UsageError("fixed descriptor needs \"auts\"");
    std::vector<FieldAut> auts;
    for (const auto& a : j.at("auts")) auts.push_back(aut_from_json(a));
    return SubfieldDescriptor::fixed(std::move(auts));
  }
  if (kind == "intersect") {
    if (!j.contains("parts") || !j.at("parts").is_array()) throw UsageError("intersect descriptor needs \"parts\"");
    std::vector<SubfieldDescriptor> parts;
    for (const auto& a : j.at("parts")) parts.push_back(subfield_from_json(a));
    return SubfieldDescriptor::intersect(std::move(parts));
  }
  throw UsageError("unknown subfield kind \"" + kind + "\"");
}

inline Json to_json(const GRingDescriptor& d) {
  Json j;
  j["p"] = d.p;
  j["n"] = d.n;
  j["s"] = d.s;
  j["field"] = to_json(*d.field);
  j["wrap"] = to_json(d.wrap);
  return j;
}

inline GRingDescriptor gring_from_json(const Json& j) {
  GRingDescriptor d;
  d.p = detail::get_field<Coeff>(j, "p");
  d.n = detail::get_field<unsigned>(j, "n");
  d.s = detail::get_field<unsigned>(j, "s");
  if (!j.contains("field")) throw UsageError("missing key \"field\"");
  d.field = make_field(field_from_json(j.at("field")));
  if (!j.contains("wrap")) throw UsageError("missing key \"wrap\"");
  d.wrap = aut_from_json(j.at("wrap"));
  check_descriptor(d);
  return d;
}

inline Json to_json(const GRingElem& v) {
  Json a = Json::array();
  for (const auto& c : v.coords) a.push_back(to_json(c));
  Json j;
  j["coords"] = a;
  return j;
}

inline GRingElem gring_elem_from_json(const Json& j, const GRingDescriptor& d) {
  if (!j.is_object() || !j.contains("coords") || !j.at("coords").is_array())
    throw UsageError("G-ring element needs \"coords\"");
  GRingElem v;
  for (const auto& c : j.at("coords")) v.coords.push_back(element_from_json(c, d.field));
  check_element(d, v);
  return v;
}

}  // namespace tambara
