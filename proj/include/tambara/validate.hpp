#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tambara/error.hpp"
#include "tambara/gring.hpp"
#include "tambara/json.hpp"
#include "tambara/spec.hpp"
#include "tambara/subfield.hpp"

namespace tambara {

struct SamplingPolicy {
  std::size_t samples = 256;
  std::uint64_t seed = 0x5eed;
  // Finite bottom rings with at most this many elements are probed exhaustively.
  std::uint64_t exhaustive_limit = 81;
  bool probe_when_symbolically_invalid = true;
};

enum class Verdict { ValidFieldLike, ValidNotFieldLike, Invalid };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ValidFieldLike: return "valid_field_like";
    case Verdict::ValidNotFieldLike: return "valid_not_field_like";
    case Verdict::Invalid: return "invalid";
  }
  return "?";
}

struct Failure {
  std::string check;
  Json witness;  // {"level","value"} for elements, {"left","right"} for descriptor pairs
  std::string message;
};

struct ValidationReport {
  Verdict verdict = Verdict::ValidFieldLike;
  std::vector<Failure> failures;
  std::vector<std::string> checks_run;

  bool ok() const { return verdict == Verdict::ValidFieldLike; }
  bool has_failure(const std::string& check_prefix) const {
    return std::any_of(failures.begin(), failures.end(),
                       [&](const Failure& f) { return f.check.rfind(check_prefix, 0) == 0; });
  }
};

inline Json to_json(const ValidationReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  Json fs = Json::array();
  for (const auto& f : r.failures) {
    Json e;
    e["check"] = f.check;
    e["witness"] = f.witness;
    e["message"] = f.message;
    fs.push_back(e);
  }
  j["failures"] = fs;
  j["checks_run"] = r.checks_run;
  return j;
}

inline Json to_json(const TambaraElem& x) {
  Json j;
  j["level"] = x.level;
  j["value"] = to_json(x.value);
  return j;
}

namespace detail {

inline Json descriptor_pair(const SubfieldDescriptor& a, const SubfieldDescriptor& b) {
  Json j;
  j["left"] = to_json(a);
  j["right"] = to_json(b);
  return j;
}

inline Json normal_pair(const SubfieldNormal& a, const SubfieldNormal& b, const FieldDescriptor& d) {
  return descriptor_pair(render(a, d), render(b, d));
}

class ReportBuilder {
 public:
  void ran(const std::string& check) {
    if (std::find(run_.begin(), run_.end(), check) == run_.end()) run_.push_back(check);
  }
  // Keeps the first witness of each kind (element or descriptor pair) per check.
  void fail(const std::string& check, Json witness, std::string message) {
    ran(check);
    const std::string key = check + (witness.contains("level") ? "|elem" : "|desc");
    if (seen_.count(key)) return;
    seen_[key] = true;
    failed_[check] = true;
    failures_.push_back({check, std::move(witness), std::move(message)});
  }
  bool failed(const std::string& check) const { return failed_.count(check) > 0; }
  bool has_element_witness(const std::string& check) const { return seen_.count(check + "|elem") > 0; }
  bool any_failure() const { return !failures_.empty(); }

  ValidationReport finish() {
    ValidationReport r;
    std::sort(failures_.begin(), failures_.end(), [](const Failure& a, const Failure& b) {
      if (a.check != b.check) return a.check < b.check;
      return a.witness.dump() < b.witness.dump();
    });
    const bool only_ideal = std::all_of(failures_.begin(), failures_.end(),
                                        [](const Failure& f) { return f.check == "invariant_ideal_free"; });
    if (failures_.empty())
      r.verdict = Verdict::ValidFieldLike;
    else if (only_ideal)
      r.verdict = Verdict::ValidNotFieldLike;
    else
      r.verdict = Verdict::Invalid;
    r.failures = std::move(failures_);
    r.checks_run = std::move(run_);
    return r;
  }

 private:
  std::vector<Failure> failures_;
  std::vector<std::string> run_;
  std::map<std::string, bool> seen_;
  std::map<std::string, bool> failed_;
};

/// Symbolic closure rules on the clarified part (levels 0..s). Levels above s
/// are closed whenever these hold.
inline void symbolic_checks(const TambaraSpec& k, ReportBuilder& out) {
  const FieldDescriptor& fd = *k.field();
  const unsigned s = k.s();
  const Coeff p = k.p();
  const bool char_p = fd.p == p;

  std::vector<SubfieldNormal> lv;
  for (unsigned i = 0; i <= s; ++i) {
    auto l = level_normal(k, i);
    if (!l) {
      out.fail("symbolic_undecided", descriptor_pair(k.chain[i], k.base),
               "level " + std::to_string(i) + " has an automorphism group too large to enumerate");
      return;
    }
    lv.push_back(std::move(*l));
  }

  out.ran("d0_full");
  const SubfieldNormal amb0 = *ambient_normal(k, 0);
  if (!(lv[0] == amb0))
    out.fail("d0_full", descriptor_pair(k.chain[0], SubfieldDescriptor::full()),
             "D_0 cuts the bottom field down to " + render(lv[0], fd).to_string());

  out.ran("chain_descending");
  for (unsigned j = 1; j <= s; ++j) {
    if (!includes(lv[j - 1], lv[j]))
      out.fail("chain_descending", normal_pair(lv[j], lv[j - 1], fd),
               "level " + std::to_string(j) + " is not contained in level " + std::to_string(j - 1));
  }

  out.ran("weyl_stable");
  for (unsigned i = 0; i <= s; ++i) {
    if (!lv[i].group.normalized_by(k.action(), fd))
      out.fail("weyl_stable", descriptor_pair(render(lv[i], fd), SubfieldDescriptor::full()),
               "the action does not preserve level " + std::to_string(i));
  }
  if (out.failed("weyl_stable")) return;

  for (unsigned i = 0; i < s; ++i) {
    for (unsigned j = i + 1; j <= s; ++j) {
      const FieldAut sj = power(k.action(), ipow(p, s - j), fd);
      const AutGroup bj = *AutGroup::generate(std::span<const FieldAut>(&sj, 1), fd);
      auto ab = AutGroup::join(lv[i].group, bj, fd);
      if (!ab) {
        out.fail("symbolic_undecided", normal_pair(lv[i], lv[j], fd), "joined group too large to enumerate");
        continue;
      }
      // Orbit of sj on level i has length q; the transfer is r times the
      // relative trace and the norm is the r-th power of the relative norm.
      std::uint64_t q = 1;
      for (FieldAut cur = sj; !lv[i].group.contains(cur); cur = compose(sj, cur, fd)) ++q;
      const std::uint64_t r = ipow(p, j - i) / q;
      unsigned e = 0;
      if (char_p)
        for (std::uint64_t x = r; x > 1; x /= p) ++e;
      const bool r_unit = !char_p || r == 1;
      const SubfieldNormal image{lv[i].depth + e, std::move(*ab)};
      const std::string name = std::string(r_unit ? "transfer" : "norm") + "(" + arrow(i, j) + ")";
      out.ran(name);
      if (!includes(lv[j], image))
        out.fail(name, normal_pair(image, lv[j], fd),
                 std::string(r_unit ? "transfer" : "norm") + " from level " + std::to_string(i) +
                     " generates " + render(image, fd).to_string() + ", not inside level " + std::to_string(j));
    }
  }
}

inline std::optional<std::uint64_t> bottom_size(const TambaraSpec& k) {
  const auto fs = k.field()->size();
  if (!fs) return std::nullopt;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k.gring.coordinate_count(); ++i) {
    total *= *fs;
    if (total > (std::uint64_t{1} << 32)) return std::nullopt;
  }
  return total;
}

inline std::vector<GRingElem> enumerate_bottom(const TambaraSpec& k) {
  const auto elems = enumerate_elements(k.field());
  const std::size_t count = k.gring.coordinate_count();
  std::vector<GRingElem> out{GRingElem{}};
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<GRingElem> next;
    for (const auto& v : out)
      for (const auto& x : elems) {
        GRingElem w = v;
        w.coords.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

/// Level-j elements built from level members of the clarified part: for j <= s
/// every coordinate is independent; above s, an orbit sum of a level-s element
/// supported on the first p^(n-j) coordinates.
template <typename Gen>
GRingElem build_level_element(const TambaraSpec& k, unsigned j, Gen&& member) {
  const std::size_t count = k.gring.coordinate_count();
  if (j <= k.s()) {
    GRingElem v;
    for (std::size_t c = 0; c < count; ++c) v.coords.push_back(member(j));
    return v;
  }
  GRingElem w = gring_zero(k.gring);
  const std::size_t block = static_cast<std::size_t>(ipow(k.p(), k.n() - j));
  for (std::size_t c = 0; c < block; ++c) w.coords[c] = member(k.s());
  return orbit_sum(k.gring, k.s(), j, w);
}

inline void probe(const TambaraSpec& k, const std::vector<std::vector<GRingElem>>& members, ReportBuilder& out) {
  const unsigned n = k.n();
  auto attempt = [&](const std::string& check, unsigned target, const GRingElem& result, const TambaraElem& x,
                     const char* what) {
    if (!level_contains(k, target, result)) {
      Json w = to_json(x);
      out.fail(check, w,
               std::string(what) + " of " + to_json(x.value).dump() + " is " + to_json(result).dump() +
                   ", which is not in level " + std::to_string(target));
    }
  };
  for (unsigned j = 0; j <= n; ++j) {
    const std::string wname = "weyl(" + std::to_string(j) + ")";
    out.ran(wname);
    for (const auto& v : members[j]) {
      const TambaraElem x{j, v};
      if (!out.has_element_witness(wname)) attempt(wname, j, act(k.gring, 1, v), x, "generator action");
      for (unsigned i = j + 1; i <= n; ++i) {
        const std::string tname = "transfer(" + arrow(j, i) + ")";
        const std::string nname = "norm(" + arrow(j, i) + ")";
        out.ran(tname);
        out.ran(nname);
        if (!out.has_element_witness(tname)) attempt(tname, i, orbit_sum(k.gring, j, i, v), x, "transfer");
        if (!out.has_element_witness(nname)) attempt(nname, i, orbit_product(k.gring, j, i, v), x, "norm");
      }
    }
  }
}

}  // namespace detail

/// Overrides the bottom ring's coordinate permutation in the ideal check; used
/// to feed synthetic non-transitive actions.
struct ValidateOptions {
  std::optional<std::vector<std::size_t>> permutation;
};

inline ValidationReport validate(const TambaraSpec& k, const SamplingPolicy& policy,
                                 const ValidateOptions& opts = {}) {
  if (policy.samples == 0) throw UsageError("sampling policy has no samples");
  check_spec(k);
  detail::ReportBuilder out;

  out.ran("wrap_order");
  const std::uint64_t ord = action_order_on_base(k);
  if (ipow(k.p(), k.s()) % ord != 0) {
    Json w;
    w["action"] = to_json(k.action());
    w["order"] = ord;
    out.fail("wrap_order", w,
             "action has order " + std::to_string(ord) + ", which does not divide p^s = " +
                 std::to_string(ipow(k.p(), k.s())));
  }

  if (!out.any_failure()) detail::symbolic_checks(k, out);

  out.ran("invariant_ideal_free");
  const bool ideal_free = opts.permutation ? invariant_ideal_free(k.gring, *opts.permutation)
                                           : invariant_ideal_free(k.gring);
  if (!ideal_free) {
    Json w;
    w["permutation"] = opts.permutation ? *opts.permutation : coordinate_permutation(k.gring);
    out.fail("invariant_ideal_free", w, "the group does not permute the bottom factors transitively");
  }

  const bool skip = out.failed("wrap_order") || out.failed("symbolic_undecided") ||
                    (out.any_failure() && !policy.probe_when_symbolically_invalid);
  if (skip) return out.finish();

  std::vector<std::vector<GRingElem>> members(k.n() + 1);
  const auto size = detail::bottom_size(k);
  if (size && *size <= policy.exhaustive_limit) {
    for (auto& v : detail::enumerate_bottom(k))
      for (unsigned j = 0; j <= k.n(); ++j)
        if (level_contains(k, j, v)) members[j].push_back(v);
  } else {
    std::vector<SubfieldNormal> lv;
    for (unsigned i = 0; i <= k.s(); ++i) lv.push_back(*level_normal(k, i));
    std::mt19937_64 rng(policy.seed);
    for (unsigned j = 0; j <= k.n(); ++j) {
      const auto boundary = boundary_members(lv[std::min(j, k.s())], k.field());
      for (const auto& b : boundary)
        members[j].push_back(detail::build_level_element(k, j, [&](unsigned) { return b; }));
      for (std::size_t c = 0; c < policy.samples; ++c)
        members[j].push_back(
            detail::build_level_element(k, j, [&](unsigned i) { return random_member(lv[i], k.field(), rng); }));
      for (const auto& v : members[j])
        if (!level_contains(k, j, v))
          throw ConsistencyError("sampled element " + to_json(v).dump() + " is outside level " + std::to_string(j));
    }
  }
  detail::probe(k, members, out);
  return out.finish();
}

}  // namespace tambara
