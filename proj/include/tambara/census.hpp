#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tambara/analysis.hpp"
#include "tambara/constructors.hpp"
#include "tambara/error.hpp"
#include "tambara/json.hpp"
#include "tambara/spec.hpp"
#include "tambara/validate.hpp"

namespace tambara {

struct CensusConfig {
  Coeff p = 2;
  unsigned n = 1;
  std::vector<FieldDescriptor> backends;
  std::vector<std::vector<FieldAut>> actions;  // one list per backend
  unsigned max_frob = 2;
  std::uint64_t seed = 0x5eed;
  unsigned jobs = 1;
  std::size_t samples = 256;
};

/// Config over one backend with the default depth bound n+1.
inline CensusConfig census_config(Coeff p, unsigned n, const FieldDescriptor& f, std::vector<FieldAut> actions) {
  CensusConfig c;
  c.p = p;
  c.n = n;
  c.backends = {f};
  c.actions = {std::move(actions)};
  c.max_frob = n + 1;
  return c;
}

struct CensusRow {
  FieldRef field;
  FieldAut action;
  std::vector<TambaraSpec> clarified;                 // clarified C_{p^n}-fields
  std::map<unsigned, std::vector<TambaraSpec>> by_s;  // Coind_s^n of clarified C_{p^s}-fields
  std::size_t not_fixed_point_iso = 0;                // among clarified
  std::vector<Evidence> cross_checks;

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [s, v] : by_s) t += v.size();
    return t;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& e : cross_checks)
      if (!e.passed) out.push_back(e.check + ": " + e.detail);
    return out;
  }
};

struct CensusReport {
  Coeff p = 2;
  unsigned n = 0;
  unsigned max_frob = 0;
  std::vector<CensusRow> rows;
};

namespace detail {

/// Runs fn(i) for i < count on up to jobs threads; results land by index.
template <typename T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += jobs) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline SamplingPolicy census_policy(const CensusConfig& cfg, std::uint64_t salt = 0) {
  SamplingPolicy p;
  p.samples = cfg.samples;
  p.seed = cfg.seed + salt;
  p.probe_when_symbolically_invalid = false;
  return p;
}

}  // namespace detail

/// Catalog subfields of a backend for a given action: every subfield of GF(q);
/// on F_p(t), Frobenius images of depth <= max_frob cut with fixed fields of
/// subgroups of the cyclic group generated by the action.
inline std::vector<SubfieldNormal> census_catalog(const FieldRef& f, const FieldAut& action, unsigned max_frob) {
  const FieldDescriptor& fd = *f;
  std::vector<SubfieldNormal> out;
  if (fd.is_finite()) {
    for (unsigned d = 1; d <= fd.k; ++d) {
      if (fd.k % d != 0) continue;
      const FieldAut g = canonical(FieldAut::frobenius(d), fd);
      out.push_back({0, *AutGroup::generate(std::span<const FieldAut>(&g, 1), fd)});
    }
    return out;
  }
  const std::uint64_t ord = order(action, fd);
  for (std::uint64_t e = 1; e <= ord; ++e) {
    if (ord % e != 0) continue;
    const FieldAut g = power(action, e, fd);
    const AutGroup h = *AutGroup::generate(std::span<const FieldAut>(&g, 1), fd);
    for (unsigned m = 0; m <= max_frob; ++m) out.push_back({m, h});
  }
  return out;
}

namespace detail {

inline void odometer_chains(std::size_t width, std::size_t levels, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(levels, 0);
  while (true) {
    f(idx);
    std::size_t pos = 0;
    while (pos < levels && ++idx[pos] == width) idx[pos++] = 0;
    if (pos == levels) return;
  }
}

}  // namespace detail

/// Valid clarified C_{p^s}-specs over (field, action) with the given bottom
/// subfield, one per canonical form, sorted by canonical key.
inline std::vector<TambaraSpec> enumerate_clarified(const CensusConfig& cfg, const FieldRef& f, const FieldAut& action,
                                                    unsigned s, const SubfieldDescriptor& base = SubfieldDescriptor::full()) {
  const FieldDescriptor& fd = *f;
  const auto catalog = census_catalog(f, action, cfg.max_frob);
  std::vector<SubfieldDescriptor> rendered;
  for (const auto& c : catalog) rendered.push_back(render(c, fd));

  std::map<std::string, TambaraSpec> candidates;
  detail::odometer_chains(rendered.size(), s, [&](const std::vector<std::size_t>& idx) {
    TambaraSpec k;
    k.gring = GRingDescriptor{cfg.p, s, s, f, canonical(action, fd)};
    k.base = base;
    k.chain.push_back(SubfieldDescriptor::full());
    for (auto i : idx) k.chain.push_back(rendered[i]);
    const TambaraSpec c = canonical(k);
    candidates.emplace(canonical_key(c), c);
  });
  std::vector<TambaraSpec> list;
  for (auto& [key, k] : candidates) list.push_back(std::move(k));
  const SamplingPolicy policy = detail::census_policy(cfg);
  const auto keep = detail::parallel_map<char>(list.size(), cfg.jobs,
                                               [&](std::size_t i) -> char { return validate(list[i], policy).ok(); });
  std::vector<TambaraSpec> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    if (keep[i]) out.push_back(list[i]);
  return out;
}

namespace detail {

inline std::set<std::string> keys_of(const std::vector<TambaraSpec>& v) {
  std::set<std::string> out;
  for (const auto& k : v) out.insert(canonical_key(k));
  return out;
}

inline Evidence set_check(const std::string& name, const std::set<std::string>& got,
                          const std::set<std::string>& expected) {
  Evidence e{name, got == expected, ""};
  e.detail = std::to_string(got.size()) + " found, " + std::to_string(expected.size()) + " predicted";
  return e;
}

inline bool action_allowed(const FieldAut& a, const FieldDescriptor& fd, Coeff p, unsigned s) {
  return ipow(p, s) % order(a, fd) == 0;
}

/// The C_p classification: trivial action gives the catalog fields between
/// Frobenius image and the whole field; a nontrivial action (or a group
/// order prime to the characteristic) leaves only the fixed-point functor.
inline std::set<std::string> predicted_cp(const CensusConfig& cfg, const FieldRef& f, const FieldAut& a) {
  const FieldDescriptor& fd = *f;
  std::set<std::string> out;
  const TambaraSpec fp = canonical(fixed_point_functor(f, a, 1, cfg.p));
  out.insert(canonical_key(fp));
  if (fd.p != cfg.p || canonical(a, fd).kind != FieldAut::Kind::Trivial) return out;
  const SubfieldNormal frob1{fd.is_finite() ? 0u : 1u, AutGroup()};
  for (const auto& c : census_catalog(f, a, cfg.max_frob)) {
    if (!includes(c, frob1)) continue;
    TambaraSpec k = fp;
    k.chain[1] = render(c, fd);
    out.insert(canonical_key(canonical(k)));
  }
  return out;
}

/// Clarified C_{p^s}-specs rebuilt from compatible pairs (top, bottom).
inline std::set<std::string> glued_clarified(const CensusConfig& cfg, const FieldRef& f, const FieldAut& a, unsigned s) {
  const FieldDescriptor& fd = *f;
  std::set<std::string> out;
  const FieldAut restricted = power(a, ipow(cfg.p, s - 1), fd);
  for (const auto& lb : enumerate_clarified(cfg, f, restricted, 1)) {
    const SubfieldDescriptor top_base = render(*level_normal(lb, 1), fd);
    for (const auto& lt : enumerate_clarified(cfg, f, a, s - 1, top_base)) {
      try {
        const TambaraSpec k = glue(GlueData{lt, lb, f, a});
        if (validate(k, census_policy(cfg)).ok()) out.insert(canonical_key(k));
      } catch (const GlueError&) {
      }
    }
  }
  return out;
}

}  // namespace detail

inline CensusRow census_row(const CensusConfig& cfg, const FieldRef& f, const FieldAut& action, bool clarified_only) {
  const FieldDescriptor& fd = *f;
  CensusRow row;
  row.field = f;
  row.action = canonical(action, fd);
  const bool char_p = fd.p == cfg.p;
  if (!detail::action_allowed(row.action, fd, cfg.p, cfg.n))
    throw UsageError("action " + row.action.to_string() + " does not have order dividing " + std::to_string(cfg.p) +
                     "^" + std::to_string(cfg.n));

  row.clarified = enumerate_clarified(cfg, f, row.action, cfg.n);
  for (const auto& k : row.clarified)
    if (!is_fixed_point_iso(k)) ++row.not_fixed_point_iso;

  if (cfg.n == 1)
    row.cross_checks.push_back(
        detail::set_check("cp_classification", detail::keys_of(row.clarified), detail::predicted_cp(cfg, f, row.action)));
  if (char_p && cfg.n >= 2)
    row.cross_checks.push_back(detail::set_check("glue_generator", detail::keys_of(row.clarified),
                                                 detail::glued_clarified(cfg, f, row.action, cfg.n)));

  std::vector<std::pair<unsigned, TambaraSpec>> ells;
  for (unsigned s = 0; s <= cfg.n; ++s) {
    if (clarified_only && s != cfg.n) continue;
    if (!detail::action_allowed(row.action, fd, cfg.p, s)) continue;
    const auto list = s == cfg.n ? row.clarified : enumerate_clarified(cfg, f, row.action, s);
    for (const auto& ell : list) ells.emplace_back(s, ell);
  }

  struct Outcome {
    std::optional<TambaraSpec> spec;
    bool round_trip = false, revalidates = false, fixed_point = false, lower_bound = true;
  };
  const SamplingPolicy fresh = detail::census_policy(cfg, 0x9e3779b97f4a7c15ULL);
  const auto outcomes = detail::parallel_map<Outcome>(ells.size(), cfg.jobs, [&](std::size_t i) {
    Outcome o;
    const auto& [s, ell] = ells[i];
    const TambaraSpec k = canonical(coinduce(ell, cfg.n));
    if (!validate(k, detail::census_policy(cfg)).ok()) return o;
    o.spec = k;
    const auto cert = decompose(k, false, detail::census_policy(cfg));
    o.round_trip = cert.s == s && descriptor_equal(cert.ell, ell) && cert.verified();
    o.revalidates = validate(k, fresh).ok();
    o.fixed_point = is_fixed_point_iso(k);
    if (char_p && is_clarified(k)) {
      const auto lb = require_normal(lower_bound_field(k), fd);
      for (unsigned j = 0; j <= k.n(); ++j) o.lower_bound = o.lower_bound && includes(*level_normal(k, j), lb);
    }
    return o;
  });

  std::set<std::string> seen;
  std::size_t round_trip = 0, revalidated = 0, fixed_point = 0, lower_bound = 0, kept = 0;
  for (std::size_t i = 0; i < ells.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.spec) continue;
    if (!seen.insert(canonical_key(*o.spec)).second) continue;
    ++kept;
    row.by_s[ells[i].first].push_back(*o.spec);
    round_trip += o.round_trip;
    revalidated += o.revalidates;
    fixed_point += o.fixed_point;
    lower_bound += o.lower_bound;
  }
  const std::string of = " of " + std::to_string(kept);
  row.cross_checks.push_back({"decompose_round_trip", round_trip == kept, std::to_string(round_trip) + of});
  row.cross_checks.push_back({"revalidate_fresh_seed", revalidated == kept, std::to_string(revalidated) + of});
  if (!char_p)
    row.cross_checks.push_back({"char_not_p_fixed_point", fixed_point == kept, std::to_string(fixed_point) + of});
  if (char_p && fd.is_finite()) {
    std::size_t clar_fp = row.clarified.size() - row.not_fixed_point_iso;
    row.cross_checks.push_back({"perfect_fixed_points", clar_fp == row.clarified.size(),
                                std::to_string(clar_fp) + " of " + std::to_string(row.clarified.size())});
  }
  if (char_p)
    row.cross_checks.push_back({"lower_bound_contained", lower_bound == kept, std::to_string(lower_bound) + of});
  return row;
}

namespace detail {

inline CensusReport run_census(const CensusConfig& cfg, bool clarified_only) {
  if (!is_prime(cfg.p)) throw UsageError("census prime must be prime");
  if (cfg.max_frob < cfg.n) throw UsageError("max_frob must be at least n");
  if (cfg.actions.size() != cfg.backends.size()) throw UsageError("need one action list per backend");
  CensusReport r{cfg.p, cfg.n, cfg.max_frob, {}};
  for (std::size_t b = 0; b < cfg.backends.size(); ++b) {
    const FieldRef f = make_field(cfg.backends[b]);
    for (const auto& a : cfg.actions[b]) r.rows.push_back(census_row(cfg, f, a, clarified_only));
  }
  return r;
}

}  // namespace detail

inline CensusReport enumerate_clarified_cp(const CensusConfig& cfg) {
  if (cfg.n != 1) throw UsageError("enumerate_clarified_cp needs n = 1");
  return detail::run_census(cfg, true);
}

inline CensusReport enumerate_field_like(const CensusConfig& cfg) { return detail::run_census(cfg, false); }

// ---------------------------------------------------------------------------
// Reports.

inline Json to_json(const CensusRow& row) {
  Json j;
  j["field"] = to_json(*row.field);
  j["field_label"] = row.field->label();
  j["action"] = to_json(row.action);
  j["count"] = row.clarified.size();
  Json bys = Json::object();
  for (const auto& [s, v] : row.by_s) bys[std::to_string(s)] = v.size();
  j["by_s"] = bys;
  j["total"] = row.total();
  j["not_fixed_point_iso"] = row.not_fixed_point_iso;
  Json specs = Json::array();
  for (const auto& k : row.clarified) specs.push_back(to_json(k));
  j["specs"] = specs;
  Json fl = Json::array();
  for (const auto& [s, v] : row.by_s)
    for (const auto& k : v) fl.push_back(to_json(k));
  j["field_like"] = fl;
  Json cc = Json::array();
  for (const auto& e : row.cross_checks) cc.push_back(to_json(e));
  j["cross_checks"] = cc;
  j["failures"] = row.failures();
  return j;
}

inline Json to_json(const CensusReport& r) {
  Json j;
  j["census_version"] = 1;
  j["catalog_relative"] = true;
  j["p"] = r.p;
  j["n"] = r.n;
  j["max_frob"] = r.max_frob;
  Json rows = Json::array();
  std::size_t failures = 0;
  for (const auto& row : r.rows) {
    rows.push_back(to_json(row));
    failures += row.failures().size();
  }
  j["rows"] = rows;
  j["failure_count"] = failures;
  return j;
}

enum class ReportFormat { Json, Markdown };

namespace detail {

inline std::string chain_text(const TambaraSpec& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.chain.size(); ++i) s += (i ? ", " : "") + k.chain[i].to_string();
  s += "]";
  if (!(k.base == SubfieldDescriptor::full())) s += " over " + k.base.to_string();
  return s;
}

}  // namespace detail

inline std::string emit_report(const CensusReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(r).dump(2) + "\n";
  std::ostringstream md;
  md << "# Census of C_" << r.p << "^" << r.n << " Tambara fields (catalog-relative)\n\n";
  md << "p = " << r.p << ", n = " << r.n << ", max_frob = " << r.max_frob << "\n\n";
  md << "| backend | action | clarified | by s | field-like | not fixed-point iso |\n";
  md << "|---|---|---|---|---|---|\n";
  for (const auto& row : r.rows) {
    std::string bys;
    for (const auto& [s, v] : row.by_s) bys += (bys.empty() ? "" : ", ") + std::to_string(s) + ":" + std::to_string(v.size());
    md << "| " << row.field->label() << " | " << row.action.to_string() << " | " << row.clarified.size() << " | "
       << (bys.empty() ? "-" : bys) << " | " << row.total() << " | " << row.not_fixed_point_iso << " |\n";
  }
  md << "\n## Cross-checks\n\n| backend | action | check | result | detail |\n|---|---|---|---|---|\n";
  for (const auto& row : r.rows)
    for (const auto& e : row.cross_checks)
      md << "| " << row.field->label() << " | " << row.action.to_string() << " | " << e.check << " | "
         << (e.passed ? "pass" : "FAIL") << " | " << e.detail << " |\n";
  md << "\n## Clarified specs\n\n";
  for (const auto& row : r.rows) {
    md << "### " << row.field->label() << ", " << row.action.to_string() << "\n\n";
    if (row.clarified.empty()) md << "(none)\n";
    for (const auto& k : row.clarified) md << "- " << detail::chain_text(k) << "\n";
    md << "\n";
  }
  return md.str();
}

}  // namespace tambara
