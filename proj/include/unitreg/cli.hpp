#pragma once

// Command dispatch for the unitreg tool. run_command() is the whole CLI minus
// process I/O, so it can be driven from tests.
//
// Exit codes: 0 all checks passed, 1 verification failure, 2 usage or parse
// error, 3 size cap exceeded.

#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unitreg/axioms.hpp"
#include "unitreg/corner.hpp"
#include "unitreg/regularity.hpp"
#include "unitreg/report.hpp"
#include "unitreg/ring.hpp"
#include "unitreg/shift.hpp"
#include "unitreg/spec_parser.hpp"
#include "unitreg/theorem.hpp"

namespace unitreg {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapped = 3;

inline constexpr const char* kSizeCapEnv = "UNITREG_SIZE_CAP";

/// Rings swept by `family`.
inline const std::vector<std::string>& curated_family() {
  static const std::vector<std::string> family = {
      "Z4", "Z6", "Z8", "Z12", "Z2xZ4", "T2(Z2)", "T2(Z3)", "M2(Z2)", "M2(Z3)", "M2(Z2)xZ2"};
  return family;
}

struct CommandResult {
  int exit_code = kExitPass;
  std::optional<ReportDocument> document;
  std::string out;
  std::string err;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli {

inline Element element_arg(const FiniteRing& r, std::uint64_t code, const char* what) {
  if (code >= r.size())
    throw UsageError(std::string(what) + " = " + std::to_string(code) + " is not an element code of " +
                     r.describe() + " (size " + std::to_string(r.size()) + ")");
  return Element{code};
}

inline Json classify_payload(const FiniteRing& r, std::uint64_t axiom_cap, bool& ok) {
  Json p;
  p["kind"] = "classify";
  p["size"] = r.size();
  auto axioms = check_ring_axioms(r, axiom_cap);
  ok = axioms.capped || axioms.all_passed();
  p["axioms"] = to_json(axioms);
  Json units = Json::array();
  for (const auto& u : r.units().pairs()) units.push_back({u.unit.code, u.inverse.code});
  p["units"] = units;
  Json idem = Json::array();
  for (auto e : r.idempotent_elements()) idem.push_back(e.code);
  p["idempotents"] = idem;
  Json regular = Json::array(), ur = Json::array(), elements = Json::array();
  for (Element x : r.elements()) {
    auto w = classify(r, x);
    if (w.t) regular.push_back(x.code);
    if (w.kind == RegularityKind::UnitRegular) ur.push_back(x.code);
    Json el;
    el["code"] = x.code;
    const Json wj = to_json(w);
    for (const auto& [k, v] : wj.items()) el[k] = v;
    el["inverse"] = code_or_null(r.units().inverse_of(x));
    elements.push_back(el);
  }
  p["regular"] = regular;
  p["unit_regular"] = ur;
  p["unit_regular_ring"] = ur.size() == r.size();
  p["elements"] = elements;
  return p;
}

// Verdict blocks and the (*)/corollary sweep for the given idempotents.
inline Json theorem_payload(const FiniteRing& r, const std::vector<Idempotent>& idems,
                            std::uint64_t axiom_cap, bool inject_fault, bool& ok) {
  Json p;
  p["kind"] = "verify-theorem";
  auto axioms = check_ring_axioms(r, axiom_cap);
  ok = axioms.capped || axioms.all_passed();
  p["axioms"] = to_json(axioms);
  p["idempotents_processed"] = idems.size();

  StarCorollaryReport star;
  star.ring = r.describe();
  star.ring_unit_regular = is_unit_regular_ring(r);
  Json blocks = Json::array();
  Json bundles = Json::array();
  ProductInclusionReport inclusion;
  bool embeddings_ok = true;
  bool first = true;
  for (const auto& idem : idems) {
    const CornerContext ctx(r, idem);
    auto blk = verdict_block(ctx);
    if (inject_fault && first && !blk.verdicts.empty()) {
      // fault-injection hook for exercising the failure path
      auto& c2 = blk.verdicts.front().get(Condition::C2);
      c2.holds = !c2.holds;
      refresh(blk);
    }
    first = false;
    ok = ok && blk.ok();
    for (const auto& v : blk.verdicts)
      if (!v.consistent) bundles.push_back(repro_bundle(v));
    blocks.push_back(to_json(blk));

    auto inc = verify_ur_product_inclusion(ctx);
    inclusion.pairs += inc.pairs;
    inclusion.failures += inc.failures;
    if (ctx.corner_e().size() * ctx.corner_f().size() <= 1024 &&
        !product_subring_embed(r, idem).ok())
      embeddings_ok = false;
    star.entries.push_back(star_and_corollary(ctx, star.ring_unit_regular));
  }
  ok = ok && inclusion.ok() && embeddings_ok && star.ok();
  p["blocks"] = blocks;
  p["star_corollary"] = to_json(star);
  p["product_inclusion"] = {{"pairs", inclusion.pairs}, {"failures", inclusion.failures}};
  p["embeddings_ok"] = embeddings_ok;
  p["repro_bundles"] = bundles;
  return p;
}

inline Json family_ring_entry(const FiniteRing& r, std::uint64_t axiom_cap, bool& ok) {
  Json entry;
  entry["ring"] = r.describe();
  entry["size"] = r.size();
  entry["unit_count"] = r.units().size();
  entry["unit_regular_ring"] = is_unit_regular_ring(r);
  auto payload = theorem_payload(r, idempotents(r), axiom_cap, false, ok);
  entry["axioms_passed"] = payload["axioms"]["all_passed"];
  entry["blocks"] = payload["blocks"];
  entry["star_corollary"] = payload["star_corollary"];
  entry["product_inclusion"] = payload["product_inclusion"];
  entry["embeddings_ok"] = payload["embeddings_ok"];
  return entry;
}

inline std::uint64_t resolve_size_cap(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSizeCapEnv)) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(kSizeCapEnv) + " must be a positive integer, got '" + env + "'");
  }
  return kDefaultSizeCap;
}

}  // namespace cli

/// Runs one CLI invocation. `args` excludes the program name.
inline CommandResult run_command(const std::vector<std::string>& args) {
  using namespace cli;
  CommandResult res;
  const auto start = std::chrono::steady_clock::now();

  CLI::App app{"Unit regularity in finite rings and their corners", "unitreg"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::optional<std::uint64_t> size_cap_flag;
  std::uint64_t axiom_cap = kDefaultAxiomCap;
  app.add_flag("--json", json, "Emit the JSON report instead of tables");
  app.add_option("--size-cap", size_cap_flag,
                 std::string("Largest ring to enumerate (default 2^20, env ") + kSizeCapEnv + ")");
  app.add_option("--axiom-cap", axiom_cap, "Largest ring checked against the ring axioms");

  std::string ring_text;
  auto* classify_cmd = app.add_subcommand("classify", "Units, idempotents, regular and unit regular elements");
  classify_cmd->add_option("--ring", ring_text, "Ring spec, e.g. M2(Z3)")->required();

  std::string idem_sel = "all";
  bool inject_fault = false;
  auto* verify_cmd = app.add_subcommand("verify-theorem", "Check conditions (1)-(5) and (4') for every corner element");
  verify_cmd->add_option("--ring", ring_text, "Ring spec")->required();
  verify_cmd->add_option("--idempotent", idem_sel, "'all' or the code of one idempotent");
  verify_cmd->add_flag("--inject-fault", inject_fault)->group("");

  std::uint64_t e_code = 0, a_code = 0, b_code = 0, u_code = 0;
  std::optional<std::uint64_t> v_code;
  auto* witness_cmd = app.add_subcommand("witness", "Extract a corner unit u' = e(u-ubu)e, v' = eve");
  witness_cmd->add_option("--ring", ring_text, "Ring spec")->required();
  witness_cmd->add_option("--e", e_code, "Idempotent code")->required();
  witness_cmd->add_option("--a", a_code, "Element of eRe")->required();
  witness_cmd->add_option("--b", b_code, "Element of fRf")->required();
  witness_cmd->add_option("--u", u_code, "Middle term with a+b = (a+b)u(a+b)")->required();
  witness_cmd->add_option("--v", v_code, "Partner of u (default: inverse of u)");

  shift::Index truncation = 32;
  auto* shift_cmd = app.add_subcommand("shift-demo", "Shift operators on an infinite-dimensional F2 space");
  shift_cmd->add_option("--truncation", truncation, "Largest truncation N (>= 2)");

  auto* family_cmd = app.add_subcommand("family", "Verify the curated ring family");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::CallForAllHelp&) {
    res.out = app.help("", CLI::AppFormatMode::All);
    return res;
  } catch (const CLI::ParseError& e) {
    res.err = std::string(e.what()) + "\n";
    res.exit_code = kExitUsage;
    return res;
  }

  ReportDocument doc;
  doc.command = args;
  bool ok = true;
  try {
    const auto size_cap = resolve_size_cap(size_cap_flag);
    auto load = [&] {
      auto spec = parse_ring_spec(ring_text);
      doc.ring = to_string(spec);
      return instantiate(spec, size_cap);
    };

    if (*classify_cmd) {
      const auto r = load();
      doc.payload = classify_payload(r, axiom_cap, ok);
    } else if (*verify_cmd) {
      const auto r = load();
      std::vector<Idempotent> idems;
      if (idem_sel == "all") {
        idems = idempotents(r);
      } else {
        std::uint64_t code = 0;
        try {
          std::size_t used = 0;
          code = std::stoull(idem_sel, &used);
          if (used != idem_sel.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
          throw UsageError("--idempotent must be 'all' or an element code");
        }
        const Element e = element_arg(r, code, "--idempotent");
        if (r.mul(e, e) != e) throw UsageError("--idempotent " + std::to_string(code) + " is not idempotent");
        idems.push_back(make_idempotent(r, e));
      }
      doc.payload = theorem_payload(r, idems, axiom_cap, inject_fault, ok);
    } else if (*witness_cmd) {
      const auto r = load();
      const Element e = element_arg(r, e_code, "--e");
      if (r.mul(e, e) != e) throw UsageError("--e " + std::to_string(e_code) + " is not idempotent");
      const Element a = element_arg(r, a_code, "--a");
      const Element b = element_arg(r, b_code, "--b");
      const Element u = element_arg(r, u_code, "--u");
      std::optional<Element> v;
      if (v_code) v = element_arg(r, *v_code, "--v");
      const auto idem = make_idempotent(r, e);
      const CornerContext ctx(r, idem);
      Json p;
      p["kind"] = "witness";
      p["e"] = e.code;
      p["f"] = idem.f.code;
      p["a"] = a.code;
      p["b"] = b.code;
      p["u"] = u.code;
      if (!v && r.contains(u)) v = is_unit(r, u);
      p["v"] = code_or_null(v);
      try {
        auto w = corner_witness_from_global(ctx, a, b, u, v);
        p["witness"] = to_json(w);
        ok = w.ok() && w.proof.all();
      } catch (const PreconditionError& err) {
        Json vs = Json::array();
        for (auto pc : err.violations()) vs.push_back(to_string(pc));
        p["violations"] = vs;
        ok = false;
      }
      doc.payload = p;
    } else if (*shift_cmd) {
      if (truncation < 2) throw UsageError("--truncation must be at least 2");
      auto demo = shift::run_shift_demo(truncation);
      ok = demo.ok();
      doc.payload = {{"kind", "shift-demo"}, {"demo", to_json(demo)}};
    } else if (*family_cmd) {
      Json rings = Json::array();
      std::size_t blocks = 0;
      for (const auto& text : curated_family()) {
        const auto r = instantiate(parse_ring_spec(text), size_cap);
        bool ring_ok = true;
        auto entry = family_ring_entry(r, axiom_cap, ring_ok);
        blocks += entry["blocks"].size();
        ok = ok && ring_ok;
        rings.push_back(entry);
      }
      doc.payload = {{"kind", "family"}, {"verdict_blocks", blocks}, {"rings", rings}};
    }
    doc.status = ok ? Status::Pass : Status::Fail;
    res.exit_code = ok ? kExitPass : kExitFail;
  } catch (const ParseError& e) {
    res.err = std::string(e.what()) + "\n";
    res.exit_code = kExitUsage;
    return res;
  } catch (const UsageError& e) {
    res.err = std::string(e.what()) + "\n";
    res.exit_code = kExitUsage;
    return res;
  } catch (const SizeCapError& e) {
    doc.status = Status::Capped;
    doc.payload = {{"kind", "capped"},
                   {"cardinality", e.cardinality() ? Json(*e.cardinality()) : Json(nullptr)},
                   {"cap", e.cap()},
                   {"message", e.what()}};
    res.exit_code = kExitCapped;
  }

  doc.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  res.out = emit_report(doc, json ? Format::Json : Format::Human);
  res.document = std::move(doc);
  return res;
}

}  // namespace unitreg
