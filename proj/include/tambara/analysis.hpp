#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "tambara/constructors.hpp"
#include "tambara/error.hpp"
#include "tambara/json.hpp"
#include "tambara/spec.hpp"
#include "tambara/validate.hpp"

namespace tambara {

struct Evidence {
  std::string check;
  bool passed = false;
  std::string detail;
};

struct DecompositionCertificate {
  unsigned s = 0;
  TambaraSpec ell;
  std::vector<Evidence> evidence;

  bool verified() const {
    return std::all_of(evidence.begin(), evidence.end(), [](const Evidence& e) { return e.passed; });
  }
};

inline Json to_json(const Evidence& e) {
  Json j;
  j["check"] = e.check;
  j["passed"] = e.passed;
  j["detail"] = e.detail;
  return j;
}

inline Json to_json(const DecompositionCertificate& c) {
  Json j;
  j["s"] = c.s;
  j["ell"] = to_json(c.ell);
  Json ev = Json::array();
  for (const auto& e : c.evidence) ev.push_back(to_json(e));
  j["evidence"] = ev;
  j["verified"] = c.verified();
  return j;
}

/// Orbit length of the first standard idempotent under the generator.
inline std::size_t idempotent_orbit_size(const GRingDescriptor& d) {
  const auto idem = standard_idempotents(d);
  const GRingElem& x0 = idem.front();
  std::size_t len = 1;
  for (GRingElem cur = act(d, 1, x0); !(cur == x0); cur = act(d, 1, cur)) ++len;
  return len;
}

namespace detail {

/// Levelwise comparison of two specs on one bottom ring: symbolic level forms
/// plus membership of sampled elements of each in the other.
inline std::vector<Evidence> compare_levels(const TambaraSpec& a, const TambaraSpec& b, const SamplingPolicy& policy) {
  std::vector<Evidence> out;
  const FieldDescriptor& fd = *a.field();
  for (unsigned i = 0; i <= std::min(a.s(), b.s()); ++i) {
    auto la = level_normal(a, i), lb = level_normal(b, i);
    Evidence e{"level_descriptor(" + std::to_string(i) + ")", la && lb && *la == *lb, ""};
    e.detail = (la ? render(*la, fd).to_string() : std::string("?")) + " / " +
               (lb ? render(*lb, fd).to_string() : std::string("?"));
    out.push_back(std::move(e));
  }
  std::mt19937_64 rng(policy.seed);
  const std::size_t rounds = std::min<std::size_t>(policy.samples, 64);
  bool ok = true;
  std::string where;
  for (unsigned j = 0; j <= a.n() && ok; ++j) {
    for (const TambaraSpec* src : {&a, &b}) {
      auto lv = level_normal(*src, std::min(j, src->s()));
      if (!lv) {
        ok = false;
        where = "level " + std::to_string(j) + " has no normal form";
        break;
      }
      for (std::size_t c = 0; c < rounds && ok; ++c) {
        const GRingElem v = build_level_element(*src, j, [&](unsigned i) {
          auto li = level_normal(*src, i);
          return random_member(*li, src->field(), rng);
        });
        if (!level_contains(a, j, v) || !level_contains(b, j, v)) {
          ok = false;
          where = "element " + to_json(v).dump() + " at level " + std::to_string(j);
        }
      }
    }
  }
  out.push_back({"sampled_round_trip", ok, ok ? std::to_string(rounds) + " samples per level and side" : where});
  return out;
}

}  // namespace detail

/// Writes k as Coind of a clarified C_{p^s}-spec, with s read off from the
/// orbit of a bottom idempotent.
inline DecompositionCertificate decompose(const TambaraSpec& k, bool require_field_like = true,
                                          const SamplingPolicy& policy = {}) {
  check_spec(k);
  if (require_field_like) {
    const auto report = validate(k, policy);
    if (!report.ok()) throw PreconditionError("decompose needs a field-like spec; verdict " +
                                              std::string(to_string(report.verdict)));
  }
  const std::size_t orbit = idempotent_orbit_size(k.gring);
  unsigned missing = 0;
  for (std::size_t x = orbit; x > 1; x /= k.p()) ++missing;
  if (ipow(k.p(), missing) != orbit || missing > k.n())
    throw ConsistencyError("idempotent orbit of size " + std::to_string(orbit) + " is not a power of p");
  const unsigned s = k.n() - missing;
  if (s != k.s())
    throw ConsistencyError("idempotent orbit gives s = " + std::to_string(s) + " but the bottom ring stores s = " +
                           std::to_string(k.s()));

  DecompositionCertificate c;
  c.s = s;
  c.ell = k;
  c.ell.gring.n = s;
  c.ell = canonical(c.ell);
  c.evidence.push_back({"idempotent_orbit", true, "orbit size " + std::to_string(orbit) + " = p^(n-s)"});
  const TambaraSpec back = coinduce(c.ell, k.n());
  c.evidence.push_back({"coinduce_descriptor", descriptor_equal(back, k), canonical_key(back)});
  for (auto& e : detail::compare_levels(back, k, policy)) c.evidence.push_back(std::move(e));
  return c;
}

/// Re-runs the coinduction comparison recorded in a certificate.
inline bool verify_certificate(const DecompositionCertificate& c, const TambaraSpec& k,
                               const SamplingPolicy& policy = {}) {
  if (c.ell.s() != c.s || !is_clarified(c.ell)) return false;
  const TambaraSpec back = coinduce(c.ell, k.n());
  if (!descriptor_equal(back, k)) return false;
  const auto ev = detail::compare_levels(back, k, policy);
  return std::all_of(ev.begin(), ev.end(), [](const Evidence& e) { return e.passed; });
}

/// Every level equals the full fixed subring of the bottom.
inline bool is_fixed_point_iso(const TambaraSpec& k) {
  check_spec(k);
  for (unsigned i = 0; i <= k.s(); ++i) {
    auto lv = level_normal(k, i);
    auto am = ambient_normal(k, i);
    if (!lv || !am) throw UsageError("level " + std::to_string(i) + " cannot be compared: group too large");
    if (!(*lv == *am)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Trace surjectivity.

enum class TraceStatus { Surjective, NotSurjective, Inconclusive };

inline const char* to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::Surjective: return "surjective";
    case TraceStatus::NotSurjective: return "not_surjective";
    case TraceStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

enum class TraceMode { Exhaustive, Sampled };

struct TraceResult {
  TraceStatus status = TraceStatus::Inconclusive;
  Json witness;
};

inline FieldElem aut_trace(const FieldAut& a, const FieldElem& x) {
  const FieldDescriptor& fd = *x.field();
  const std::uint64_t d = order(a, fd);
  FieldElem acc = FieldElem::zero(x.field());
  FieldElem cur = x;
  for (std::uint64_t e = 0; e < d; ++e) {
    acc += cur;
    cur = apply(a, cur);
  }
  return acc;
}

/// Sampled mode certifies with one z of nonzero trace c: Tr(z * y / c) = y for
/// every fixed y.
inline TraceResult trace_image_check(const FieldRef& f, const FieldAut& a, TraceMode mode, std::uint64_t seed = 1,
                                     std::size_t attempts = 256) {
  const FieldAut c = canonical(a, *f);
  if (c.kind == FieldAut::Kind::Trivial) throw UsageError("trace of the trivial automorphism is degenerate");
  TraceResult r;
  if (mode == TraceMode::Exhaustive) {
    const auto size = f->size();
    if (!size || *size > 81) throw UsageError("exhaustive trace check needs a finite field with at most 81 elements");
    std::set<std::string> image;
    for (const auto& x : enumerate_elements(f)) image.insert(to_json(aut_trace(c, x)).dump());
    for (const auto& y : enumerate_elements(f)) {
      if (!(apply(c, y) == y)) continue;
      if (!image.count(to_json(y).dump())) {
        r.status = TraceStatus::NotSurjective;
        r.witness["missed"] = to_json(y);
        return r;
      }
    }
    r.status = TraceStatus::Surjective;
    r.witness["image_size"] = image.size();
    return r;
  }
  std::vector<FieldElem> candidates{FieldElem::one(f)};
  FieldElem g = FieldElem::generator(f);
  for (int e = 1; e <= 4; ++e) candidates.push_back(g.pow(e));
  candidates.push_back(g.inv());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < attempts; ++i) candidates.push_back(random_element(f, rng));
  for (const auto& z : candidates) {
    const FieldElem tz = aut_trace(c, z);
    if (!tz.is_zero()) {
      r.status = TraceStatus::Surjective;
      r.witness["z"] = to_json(z);
      r.witness["trace"] = to_json(tz);
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Theorem checks.

enum class Theorem { CharNotP, PerfectFixedPoints, NontrivialCpAction, IntermediateFields, CoinducedForm };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::CharNotP: return "char_not_p";
    case Theorem::PerfectFixedPoints: return "perfect_fixed_points";
    case Theorem::NontrivialCpAction: return "nontrivial_cp_action";
    case Theorem::IntermediateFields: return "intermediate_fields";
    case Theorem::CoinducedForm: return "coinduced_form";
  }
  return "?";
}

inline Theorem theorem_from_string(const std::string& s) {
  for (auto t : {Theorem::CharNotP, Theorem::PerfectFixedPoints, Theorem::NontrivialCpAction,
                 Theorem::IntermediateFields, Theorem::CoinducedForm})
    if (s == to_string(t)) return t;
  throw UsageError("unknown theorem \"" + s + "\"");
}

struct CheckResult {
  Theorem theorem{};
  bool hypotheses_met = false;
  bool conclusion_holds = false;
  Json witnesses = Json::array();
};

inline Json to_json(const CheckResult& r) {
  Json j;
  j["theorem"] = to_string(r.theorem);
  j["hypotheses_met"] = r.hypotheses_met;
  j["conclusion_holds"] = r.conclusion_holds;
  j["witnesses"] = r.witnesses;
  return j;
}

namespace detail {

inline Json note(const std::string& what, const std::string& detail) {
  Json j;
  j["note"] = what;
  j["detail"] = detail;
  return j;
}

inline bool intermediate_fields_hold(const TambaraSpec& k, const SamplingPolicy& policy, Json& witnesses) {
  const FieldDescriptor& fd = *k.field();
  const auto lb = require_normal(lower_bound_field(k), fd);
  std::mt19937_64 rng(policy.seed);
  bool ok = true;
  for (unsigned i = 0; i <= k.n(); ++i) {
    const auto lv = level_normal(k, i);
    if (!lv) {
      witnesses.push_back(note("unknown", "level " + std::to_string(i) + " has no normal form"));
      return false;
    }
    if (!includes(*lv, lb)) {
      witnesses.push_back(note("lower_bound_not_contained", "level " + std::to_string(i)));
      ok = false;
      continue;
    }
    for (std::size_t c = 0; c < std::min<std::size_t>(policy.samples, 64); ++c) {
      const FieldElem y = random_member(lb, k.field(), rng);
      const FieldElem x = random_member(*lv, k.field(), rng);
      const FieldElem x2 = random_member(*lv, k.field(), rng);
      GRingElem gy{{y}}, gxy{{x * x2}}, gsum{{x + x2}};
      bool fine = level_contains(k, i, gy) && level_contains(k, i, gxy) && level_contains(k, i, gsum);
      if (!x.is_zero()) fine = fine && level_contains(k, i, GRingElem{{x.inv()}});
      if (!fine) {
        Json w;
        w["level"] = i;
        w["x"] = to_json(x);
        w["y"] = to_json(y);
        witnesses.push_back(w);
        ok = false;
        break;
      }
    }
  }
  return ok;
}

}  // namespace detail

inline CheckResult check_theorem(Theorem t, const TambaraSpec& k, const SamplingPolicy& policy = {}) {
  CheckResult r;
  r.theorem = t;
  const auto report = validate(k, policy);
  const bool valid = report.ok();
  const bool char_p = characteristic(k) == k.p();
  if (!valid) r.witnesses.push_back(detail::note("not_field_like", to_string(report.verdict)));
  switch (t) {
    case Theorem::CharNotP:
      r.hypotheses_met = valid && !char_p;
      if (r.hypotheses_met) r.conclusion_holds = is_fixed_point_iso(k);
      break;
    case Theorem::PerfectFixedPoints:
      // Every subfield of GF(q) is perfect; F_p(t) and its catalog subfields are not.
      r.hypotheses_met = valid && is_clarified(k) && char_p && k.field()->is_finite();
      if (r.hypotheses_met) r.conclusion_holds = is_fixed_point_iso(k);
      break;
    case Theorem::NontrivialCpAction: {
      r.hypotheses_met = valid && is_clarified(k) && char_p && k.n() == 1 && action_order_on_base(k) > 1;
      if (!r.hypotheses_met) break;
      r.conclusion_holds = is_fixed_point_iso(k);
      const auto tr = trace_image_check(k.field(), canonical_action(k),
                                        k.field()->is_finite() && *k.field()->size() <= 81 ? TraceMode::Exhaustive
                                                                                          : TraceMode::Sampled,
                                        policy.seed);
      Json w;
      w["trace"] = to_string(tr.status);
      w["certificate"] = tr.witness;
      r.witnesses.push_back(w);
      break;
    }
    case Theorem::IntermediateFields:
      r.hypotheses_met = valid && is_clarified(k) && char_p;
      if (r.hypotheses_met) r.conclusion_holds = detail::intermediate_fields_hold(k, policy, r.witnesses);
      break;
    case Theorem::CoinducedForm:
      r.hypotheses_met = valid;
      if (r.hypotheses_met) {
        const auto cert = decompose(k, false, policy);
        r.conclusion_holds = cert.verified() && verify_certificate(cert, k, policy);
        r.witnesses.push_back(to_json(cert));
      }
      break;
  }
  return r;
}

}  // namespace tambara
