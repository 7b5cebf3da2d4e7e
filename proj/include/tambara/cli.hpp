#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tambara/analysis.hpp"
#include "tambara/census.hpp"
#include "tambara/constructors.hpp"
#include "tambara/error.hpp"
#include "tambara/json.hpp"
#include "tambara/spec.hpp"
#include "tambara/validate.hpp"

namespace tambara::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kRejected = 3 };

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline std::int64_t to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad integer \"" + s + "\" in " + what);
  }
}

}  // namespace detail

/// gf:<p>:<k>[:<modulus coefficients, little-endian, comma separated>] or ratfunc:<p>.
inline FieldDescriptor parse_field(const std::string& text) {
  const auto parts = detail::split(text, ':');
  if (parts.size() == 2 && parts[0] == "ratfunc")
    return FieldDescriptor::ratfunc(static_cast<Coeff>(detail::to_int(parts[1], text)));
  if ((parts.size() == 3 || parts.size() == 4) && parts[0] == "gf") {
    const auto p = detail::to_int(parts[1], text);
    const auto k = detail::to_int(parts[2], text);
    if (p < 2 || k < 1 || k > 32) throw UsageError("bad field \"" + text + "\"");
    if (parts.size() == 3) return FieldDescriptor::gf(static_cast<Coeff>(p), static_cast<unsigned>(k));
    std::vector<std::int64_t> c;
    for (const auto& x : detail::split(parts[3], ',')) c.push_back(detail::to_int(x, text));
    return FieldDescriptor::gf(static_cast<Coeff>(p), static_cast<unsigned>(k), Poly(static_cast<Coeff>(p), c));
  }
  throw UsageError("bad field \"" + text + "\"; expected gf:<p>:<k>[:<modulus>] or ratfunc:<p>");
}

/// trivial, frob:<m> or mobius:<a>,<b>,<c>,<d>.
inline FieldAut parse_action(const std::string& text) {
  if (text == "trivial") return FieldAut::trivial();
  const auto parts = detail::split(text, ':');
  if (parts.size() == 2 && parts[0] == "frob") {
    const auto m = detail::to_int(parts[1], text);
    if (m < 1) throw UsageError("Frobenius power must be >= 1");
    return FieldAut::frobenius(static_cast<unsigned>(m));
  }
  if (parts.size() == 2 && parts[0] == "mobius") {
    const auto e = detail::split(parts[1], ',');
    if (e.size() != 4) throw UsageError("mobius needs four entries a,b,c,d");
    return FieldAut::mobius(detail::to_int(e[0], text), detail::to_int(e[1], text), detail::to_int(e[2], text),
                            detail::to_int(e[3], text));
  }
  throw UsageError("bad action \"" + text + "\"; expected trivial, frob:<m> or mobius:<a>,<b>,<c>,<d>");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

/// Human-readable level table.
inline std::string explain(const TambaraSpec& k) {
  const FieldDescriptor& fd = *k.field();
  std::ostringstream out;
  out << "C_" << k.p() << "^" << k.n() << " Tambara functor over " << fd.label() << ", generator acting by "
      << k.action().to_string() << "\n";
  if (!(k.base == SubfieldDescriptor::full())) out << "bottom field: " << k.base.to_string() << "\n";
  out << "clarification index s = " << k.s() << (is_clarified(k) ? " (clarified)" : " (separated)")
      << ", characteristic " << characteristic(k) << "\n\n";
  out << "level  subgroup  factors  field\n";
  for (unsigned i = 0; i <= k.n(); ++i) {
    const unsigned li = std::min(i, k.s());
    const auto lv = level_normal(k, li);
    const std::string field = lv ? render(*lv, fd).to_string() : std::string("(group too large)");
    const std::uint64_t factors = i <= k.s() ? k.gring.coordinate_count() : ipow(k.p(), k.n() - i);
    std::string sub = "C_" + std::to_string(ipow(k.p(), i));
    out << std::to_string(i) << std::string(7 - std::to_string(i).size(), ' ') << sub
        << std::string(sub.size() < 10 ? 10 - sub.size() : 1, ' ') << factors
        << std::string(9 - std::min<std::size_t>(8, std::to_string(factors).size()), ' ') << field
        << (i > k.s() ? " (diagonal)" : "") << "\n";
  }
  out << "\nrestriction: inclusion of levels\ntransfer: sum over the Weyl orbit\nnorm: product over the Weyl orbit\n";
  return out.str();
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline void emit(const std::string& text, const std::string& path, Streams io) {
  if (path.empty()) {
    io.out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

inline TambaraSpec load_spec(const std::string& path) { return spec_from_json(read_json_file(path)); }

}  // namespace detail

inline int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Field-like C_{p^n}-Tambara functors: validate, construct, decompose, census"};
  app.require_subcommand(1, 1);

  std::string output;
  std::uint64_t seed = 0x5eed;
  std::size_t samples = 256;

  auto* validate_cmd = app.add_subcommand("validate", "Validate a spec file");
  std::string spec_path;
  validate_cmd->add_option("path", spec_path, "Spec JSON")->required();

  auto* construct_cmd = app.add_subcommand("construct", "Build a spec");
  std::string kind, field_text, action_text = "trivial", input;
  unsigned n = 0, group_p = 0;
  construct_cmd->add_option("kind", kind, "fixed-point | coinduce | glue | restrict | extract-top | extract-bottom")
      ->required()
      ->check(CLI::IsMember({"fixed-point", "coinduce", "glue", "restrict", "extract-top", "extract-bottom"}));
  construct_cmd->add_option("--field", field_text, "gf:<p>:<k>[:<modulus>] or ratfunc:<p>");
  construct_cmd->add_option("--action", action_text, "trivial, frob:<m> or mobius:<a>,<b>,<c>,<d>");
  construct_cmd->add_option("--n", n, "Group exponent");
  construct_cmd->add_option("--p", group_p, "Group prime (defaults to the characteristic)");
  construct_cmd->add_option("--input", input, "Input spec or glue data");

  auto* decompose_cmd = app.add_subcommand("decompose", "Write a field-like spec as a coinduction");
  bool verify = false;
  decompose_cmd->add_option("path", spec_path, "Spec JSON")->required();
  decompose_cmd->add_flag("--verify", verify, "Re-run the coinduction comparison");

  auto* census_cmd = app.add_subcommand("census", "Enumerate field-like specs over a bounded catalog");
  Coeff census_p = 2;
  unsigned census_n = 1, jobs = 1;
  int max_frob = -1;
  std::vector<std::string> fields, actions;
  std::string format = "json";
  census_cmd->add_option("--p", census_p, "Group prime")->required();
  census_cmd->add_option("--n", census_n, "Group exponent")->required();
  census_cmd->add_option("--field", fields, "Backend (repeatable)")->required();
  census_cmd->add_option("--action", actions, "Action (repeatable; applied to every backend)");
  census_cmd->add_option("--max-frob", max_frob, "Frobenius depth bound (default n+1)");
  census_cmd->add_option("--format", format, "json | markdown")->check(CLI::IsMember({"json", "markdown"}));
  census_cmd->add_option("--jobs", jobs, "Worker threads");

  auto* explain_cmd = app.add_subcommand("explain", "Print the level table of a spec");
  explain_cmd->add_option("path", spec_path, "Spec JSON")->required();

  for (auto* c : {validate_cmd, construct_cmd, decompose_cmd, census_cmd, explain_cmd}) {
    c->add_option("--output,-o", output, "Write to a file instead of stdout");
    c->add_option("--seed", seed, "Sampling seed (TAMBARA_SEED overrides)");
    c->add_option("--samples", samples, "Samples per level");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kUsage;
  }
  if (const char* env = std::getenv("TAMBARA_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      io.err << "error: TAMBARA_SEED is not an integer\n";
      return kUsage;
    }
  }
  SamplingPolicy policy;
  policy.seed = seed;
  policy.samples = samples;

  try {
    if (*validate_cmd) {
      const TambaraSpec k = detail::load_spec(spec_path);
      const auto report = validate(k, policy);
      detail::emit(to_json(report).dump(2) + "\n", output, io);
      return report.ok() ? kOk : kRejected;
    }
    if (*construct_cmd) {
      TambaraSpec k;
      if (kind == "fixed-point") {
        if (field_text.empty()) throw UsageError("fixed-point needs --field");
        const FieldRef f = make_field(parse_field(field_text));
        k = fixed_point_functor(f, parse_action(action_text), n, group_p);
      } else if (kind == "glue") {
        if (input.empty()) throw UsageError("glue needs --input");
        k = glue(glue_from_json(read_json_file(input)));
      } else {
        if (input.empty()) throw UsageError(kind + " needs --input");
        const TambaraSpec ell = detail::load_spec(input);
        if (kind == "coinduce")
          k = coinduce(ell, n);
        else if (kind == "restrict")
          k = restrict_clarified(ell, n);
        else if (kind == "extract-top")
          k = extract_top(ell);
        else
          k = extract_bottom(ell);
      }
      detail::emit(to_json(canonical(k)).dump(2) + "\n", output, io);
      return kOk;
    }
    if (*decompose_cmd) {
      const TambaraSpec k = detail::load_spec(spec_path);
      const auto report = validate(k, policy);
      if (!report.ok()) {
        io.err << "error: spec is not field-like (" << to_string(report.verdict) << ")\n";
        detail::emit(to_json(report).dump(2) + "\n", output, io);
        return kRejected;
      }
      const auto cert = decompose(k, false, policy);
      Json j = to_json(cert);
      if (verify) j["verify"] = verify_certificate(cert, k, policy);
      detail::emit(j.dump(2) + "\n", output, io);
      return cert.verified() && (!verify || j["verify"].get<bool>()) ? kOk : kRejected;
    }
    if (*census_cmd) {
      CensusConfig cfg;
      cfg.p = census_p;
      cfg.n = census_n;
      cfg.max_frob = max_frob < 0 ? census_n + 1 : static_cast<unsigned>(max_frob);
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.jobs = jobs;
      if (cfg.n > 4 || cfg.max_frob > 8) throw UsageError("catalog too large: need n <= 4 and max-frob <= 8");
      if (actions.empty()) actions.push_back("trivial");
      std::vector<FieldAut> acts;
      for (const auto& a : actions) acts.push_back(parse_action(a));
      for (const auto& f : fields) {
        FieldDescriptor fd = parse_field(f);
        if (fd.is_finite() && fd.k > 12) throw UsageError("catalog too large: GF extension degree above 12");
        std::vector<FieldAut> fits;
        for (const auto& a : acts) {
          const bool kind_ok = a.kind == FieldAut::Kind::Trivial ||
                               (a.kind == FieldAut::Kind::Frobenius) == fd.is_finite();
          if (kind_ok) fits.push_back(a);
        }
        if (fits.empty()) throw UsageError("no action applies to " + fd.label());
        cfg.backends.push_back(std::move(fd));
        cfg.actions.push_back(std::move(fits));
      }
      const auto report = enumerate_field_like(cfg);
      detail::emit(emit_report(report, format == "markdown" ? ReportFormat::Markdown : ReportFormat::Json), output,
                   io);
      return kOk;
    }
    if (*explain_cmd) {
      detail::emit(explain(detail::load_spec(spec_path)), output, io);
      return kOk;
    }
  } catch (const GlueError& e) {
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ClosureViolation& e) {
    io.err << "error: " << e.what() << "\n";
    return kRejected;
  } catch (const ConsistencyError& e) {
    io.err << "internal error: " << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace tambara::cli
