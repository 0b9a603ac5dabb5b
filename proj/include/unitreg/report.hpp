#pragma once

// JSON encoding of results and the report document shared by the CLI and the
// repro bundles. Keys are emitted in insertion order, so a given document
// always serializes to the same bytes.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "unitreg/axioms.hpp"
#include "unitreg/corner.hpp"
#include "unitreg/regularity.hpp"
#include "unitreg/shift.hpp"
#include "unitreg/theorem.hpp"

namespace unitreg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

inline Json code_or_null(const std::optional<Element>& x) {
  return x ? Json(x->code) : Json(nullptr);
}

inline Json to_json(const AxiomReport& rep) {
  Json j;
  j["capped"] = rep.capped;
  j["size"] = rep.size;
  j["all_passed"] = rep.all_passed();
  Json results = Json::array();
  for (const auto& r : rep.results) {
    Json item;
    item["axiom"] = r.name;
    item["passed"] = r.passed;
    if (r.counterexample) {
      Json triple = Json::array();
      for (auto x : *r.counterexample) triple.push_back(x.code);
      item["counterexample"] = triple;
    } else {
      item["counterexample"] = nullptr;
    }
    results.push_back(item);
  }
  j["results"] = results;
  return j;
}

inline Json to_json(const ConditionResult& c) {
  Json j;
  j["label"] = label(c.which);
  j["holds"] = c.holds;
  Json ws = Json::array();
  for (const auto& w : c.witnesses) {
    Json item;
    item["b"] = code_or_null(w.b);
    item["u"] = w.u.code;
    item["u_inv"] = w.u_inv.code;
    ws.push_back(item);
  }
  j["witnesses"] = ws;
  j["failing_b"] = code_or_null(c.failing_b);
  return j;
}

inline Json to_json(const VerdictReport& v) {
  Json j;
  j["a"] = v.a.code;
  Json conds;
  for (Condition c : kAllConditions) conds[key(c)] = to_json(v.get(c));
  j["conditions"] = conds;
  j["consistent"] = v.consistent;
  j["chain_violations"] = chain_violations(v);
  return j;
}

/// Everything needed to replay an inconsistent verdict.
inline Json repro_bundle(const VerdictReport& v) {
  Json j;
  j["ring"] = v.ring;
  j["e"] = v.idem.e.code;
  j["f"] = v.idem.f.code;
  j["verdict"] = to_json(v);
  return j;
}

/// Thrown by require_consistent; what() carries the serialized bundle.
class VerificationFailure : public std::runtime_error {
 public:
  explicit VerificationFailure(Json bundle)
      : std::runtime_error("inconsistent verdict: " + bundle.dump()), bundle_(std::move(bundle)) {}
  const Json& bundle() const noexcept { return bundle_; }

 private:
  Json bundle_;
};

inline void require_consistent(const std::vector<VerdictReport>& reports) {
  for (const auto& v : reports)
    if (!v.consistent) throw VerificationFailure(repro_bundle(v));
}

/// All verdicts for one (ring, idempotent), plus the summary flags.
struct VerdictBlock {
  std::string ring;
  Idempotent idem;
  std::uint64_t corner_size = 0;
  std::uint64_t complement_size = 0;
  std::vector<VerdictReport> verdicts;
  bool all_consistent = true;
  bool chain_ok = true;
  bool witnesses_reverified = true;
  bool cond4prime_agrees = true;  // informational only

  bool ok() const { return all_consistent && chain_ok && witnesses_reverified; }
};

inline VerdictBlock verdict_block(const CornerContext& ctx) {
  VerdictBlock blk;
  blk.ring = ctx.ring().describe();
  blk.idem = ctx.idempotent();
  blk.corner_size = ctx.corner_e().size();
  blk.complement_size = ctx.corner_f().size();
  blk.verdicts = verify_equivalences(ctx);
  for (const auto& v : blk.verdicts) {
    if (!v.consistent) blk.all_consistent = false;
    if (!chain_violations(v).empty()) blk.chain_ok = false;
    if (!reverify(ctx, v)) blk.witnesses_reverified = false;
    if (v.holds(Condition::C4Prime) != v.holds(Condition::C1)) blk.cond4prime_agrees = false;
  }
  return blk;
}

/// Re-derives the block flags, e.g. after a verdict was edited.
inline void refresh(VerdictBlock& blk) {
  blk.all_consistent = true;
  blk.chain_ok = true;
  for (auto& v : blk.verdicts) {
    v.refresh_consistency();
    if (!v.consistent) blk.all_consistent = false;
    if (!chain_violations(v).empty()) blk.chain_ok = false;
  }
}

inline Json to_json(const VerdictBlock& blk) {
  Json j;
  j["ring"] = blk.ring;
  j["e"] = blk.idem.e.code;
  j["f"] = blk.idem.f.code;
  j["corner_size"] = blk.corner_size;
  j["complement_size"] = blk.complement_size;
  j["all_consistent"] = blk.all_consistent;
  j["chain_ok"] = blk.chain_ok;
  j["witnesses_reverified"] = blk.witnesses_reverified;
  j["cond4prime_agrees"] = blk.cond4prime_agrees;
  Json vs = Json::array();
  for (const auto& v : blk.verdicts) vs.push_back(to_json(v));
  j["verdicts"] = vs;
  Json bundles = Json::array();
  for (const auto& v : blk.verdicts)
    if (!v.consistent) bundles.push_back(repro_bundle(v));
  j["repro_bundles"] = bundles;
  return j;
}

inline Json to_json(const StarCorollaryReport& rep) {
  Json j;
  j["ring"] = rep.ring;
  j["ring_unit_regular"] = rep.ring_unit_regular;
  j["ok"] = rep.ok();
  Json es = Json::array();
  for (const auto& en : rep.entries) {
    Json item;
    item["e"] = en.idem.e.code;
    item["corner_size"] = en.corner_size;
    item["corner_ur_count"] = en.corner_ur_count;
    item["star_ok"] = en.star_ok;
    item["corner_unit_regular"] = en.corner_unit_regular;
    item["corollary_route_ok"] =
        en.corollary_route_ok ? Json(*en.corollary_route_ok) : Json(nullptr);
    es.push_back(item);
  }
  j["entries"] = es;
  return j;
}

inline Json to_json(const CornerWitness& w) {
  Json j;
  j["u_prime"] = w.u_prime.code;
  j["v_prime"] = w.v_prime.code;
  j["ok"] = w.ok();
  Json id;
  id["in_corner"] = w.in_corner;
  id["a_uprime_a_eq_a"] = w.au_prime_a;
  id["uprime_vprime_eq_e"] = w.u_prime_v_prime;
  id["vprime_uprime_eq_e"] = w.v_prime_u_prime;
  j["identities"] = id;
  Json p;
  p["a_eq_aua"] = w.proof.a_eq_aua;
  p["b_eq_bub"] = w.proof.b_eq_bub;
  p["bua_zero"] = w.proof.bua_zero;
  p["aub_zero"] = w.proof.aub_zero;
  p["one_minus_bu_times_f_zero"] = w.proof.one_minus_bu_f_zero;
  p["e_times_one_minus_ub_eq_one_minus_ub"] = w.proof.e_fixes_one_minus_ub;
  p["be_zero"] = w.proof.be_zero;
  j["proof_identities"] = p;
  return j;
}

inline Json to_json(const RegularityWitness& w) {
  Json j;
  j["kind"] = to_string(w.kind);
  j["t"] = code_or_null(w.t);
  j["u"] = code_or_null(w.u);
  j["u_partner"] = code_or_null(w.u_partner);
  return j;
}

inline Json to_json(const CounterexampleReport& rep) {
  Json j;
  j["ring"] = rep.ring;
  j["a"] = rep.a.code;
  j["u"] = rep.u.code;
  j["v"] = rep.v.code;
  j["e"] = rep.e.code;
  j["aua_eq_a"] = rep.aua_eq_a;
  j["uv_identity"] = rep.uv_identity;
  j["vu_identity"] = rep.vu_identity;
  j["a_in_corner_ur"] = rep.a_in_corner_ur ? Json(*rep.a_in_corner_ur) : Json(nullptr);
  return j;
}

inline Json to_json(const shift::BandOperator& op) {
  Json j;
  Json diags = Json::array();
  for (const auto& [d, m] : op.diagonals()) diags.push_back({{"offset", d}, {"start", m}});
  j["diagonals"] = diags;
  Json exc = Json::array();
  for (const auto& [i, image] : op.exceptions())
    exc.push_back({{"index", i}, {"image", std::vector<shift::Index>(image.begin(), image.end())}});
  j["exceptions"] = exc;
  return j;
}

inline Json to_json(const shift::ShiftDemoReport& rep) {
  Json j;
  j["truncation"] = rep.truncation;
  j["ok"] = rep.ok();
  Json exact;
  exact["ts_eq_1"] = rep.ts_identity;
  exact["st_eq_1_minus_p0"] = rep.st_kills_e0;
  exact["st_ne_1"] = rep.st_not_identity;
  exact["sts_eq_s"] = rep.sts_eq_s;
  exact["aua_eq_a"] = rep.aua_eq_a;
  exact["uv_eq_1"] = rep.uv_identity;
  exact["vu_eq_1"] = rep.vu_identity;
  exact["corner_shape"] = rep.corner_shape;
  exact["evaluation_consistent"] = rep.evaluation_consistent;
  j["exact_identities"] = exact;
  j["s"] = to_json(shift::BandOperator::right_shift());
  j["t"] = to_json(shift::BandOperator::left_shift());
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n}, {"rank", r.rank}, {"kernel_dim", r.kernel_dim},
                    {"cokernel_dim", r.cokernel_dim}});
  j["truncations"] = rows;
  j["kernel_cokernel_ok"] = rep.kernel_cokernel_ok;
  j["conclusion"] = "s regular, and not unit regular by the kernel/cokernel criterion";
  j["criterion"] = rep.note;
  j["criterion_status"] = "cited";
  return j;
}

// ---------------------------------------------------------------------------

enum class Status { Pass, Fail, Capped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Capped: return "capped";
  }
  return "?";
}

struct ReportDocument {
  std::vector<std::string> command;
  std::string ring;  // empty when the command takes no ring
  Status status = Status::Pass;
  Json payload = Json::object();
  double elapsed_ms = 0.0;  // envelope only, not part of the payload
};

inline Json to_json(const ReportDocument& doc) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = doc.command;
  j["ring"] = doc.ring.empty() ? Json(nullptr) : Json(doc.ring);
  j["status"] = to_string(doc.status);
  j["payload"] = doc.payload;
  j["timing"] = {{"elapsed_ms", doc.elapsed_ms}};
  return j;
}

enum class Format { Human, Json };

namespace detail {

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto& r = rows_[k];
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i + 1 < r.size())
          os << std::left << std::setw(static_cast<int>(width[i])) << r[i] << "  ";
        else
          os << r[i];
      }
      os << '\n';
      if (k == 0) {
        std::size_t total = 0;
        for (auto w : width) total += w + 2;
        os << std::string(total > 2 ? total - 2 : total, '-') << '\n';
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string yes_no(const Json& b) {
  if (b.is_null()) return "-";
  return b.get<bool>() ? "yes" : "no";
}

inline std::string code_list(const Json& arr) {
  std::string s = "{";
  bool first = true;
  for (const auto& x : arr) {
    s += (first ? "" : ", ") + x.dump();
    first = false;
  }
  return s + "}";
}

inline void render_block(std::ostream& os, const Json& blk) {
  os << "idempotent e = " << blk["e"] << ", f = " << blk["f"] << "  |eRe| = "
     << blk["corner_size"] << ", |fRf| = " << blk["complement_size"] << '\n';
  std::vector<std::string> header{"a"};
  for (Condition c : kAllConditions) header.push_back(label(c));
  header.push_back("consistent");
  Table t(header);
  for (const auto& v : blk["verdicts"]) {
    std::vector<std::string> row{v["a"].dump()};
    for (Condition c : kAllConditions) row.push_back(v["conditions"][key(c)]["holds"].get<bool>() ? "T" : "F");
    row.push_back(yes_no(v["consistent"]));
    t.add(row);
  }
  t.print(os);
  os << "all consistent: " << yes_no(blk["all_consistent"])
     << "   chain (4)=>(3)=>(2)=>(3')=>(5), (1)=>(4'): " << (blk["chain_ok"].get<bool>() ? "ok" : "VIOLATED")
     << "   witnesses re-verified: " << yes_no(blk["witnesses_reverified"]) << "\n";
  for (const auto& b : blk["repro_bundles"]) os << "repro bundle: " << b.dump() << '\n';
  os << '\n';
}

inline void render_star(std::ostream& os, const Json& sc) {
  os << "ring unit regular: " << yes_no(sc["ring_unit_regular"]) << '\n';
  Table t({"e", "|eRe|", "|ur(eRe)|", "(*) ok", "eRe unit regular", "corollary route"});
  for (const auto& en : sc["entries"])
    t.add({en["e"].dump(), en["corner_size"].dump(), en["corner_ur_count"].dump(),
           yes_no(en["star_ok"]), yes_no(en["corner_unit_regular"]),
           yes_no(en["corollary_route_ok"])});
  t.print(os);
}

inline void render_payload(std::ostream& os, const Json& p) {
  const auto kind = p.value("kind", std::string{});
  if (kind == "capped") {
    os << "size cap exceeded: cardinality "
       << (p["cardinality"].is_null() ? std::string("> 2^64") : p["cardinality"].dump())
       << " > cap " << p["cap"] << '\n';
  } else if (kind == "classify") {
    os << "|R| = " << p["size"] << ", units: " << p["units"].size()
       << ", idempotents: " << code_list(p["idempotents"]) << '\n';
    os << "regular: " << code_list(p["regular"]) << '\n';
    os << "ur(R): " << code_list(p["unit_regular"]) << '\n';
    os << "unit regular ring: " << yes_no(p["unit_regular_ring"]) << '\n';
    Table t({"x", "kind", "t", "u", "u partner", "inverse"});
    for (const auto& el : p["elements"])
      t.add({el["code"].dump(), el["kind"].get<std::string>(), el["t"].dump(), el["u"].dump(),
             el["u_partner"].dump(), el["inverse"].dump()});
    t.print(os);
  } else if (kind == "verify-theorem") {
    os << "idempotents processed: " << p["idempotents_processed"] << "\n\n";
    for (const auto& blk : p["blocks"]) render_block(os, blk);
    render_star(os, p["star_corollary"]);
  } else if (kind == "witness") {
    if (p.contains("violations")) {
      os << "preconditions violated:\n";
      for (const auto& v : p["violations"]) os << "  - " << v.get<std::string>() << '\n';
      return;
    }
    const auto& w = p["witness"];
    os << "u' = e(u - ubu)e = " << w["u_prime"] << "\nv' = eve = " << w["v_prime"] << '\n';
    Table t({"identity", "holds"});
    for (const auto& [k, v] : w["identities"].items()) t.add({k, yes_no(v)});
    for (const auto& [k, v] : w["proof_identities"].items()) t.add({k, yes_no(v)});
    t.print(os);
  } else if (kind == "shift-demo") {
    const auto& d = p["demo"];
    Table t({"identity", "holds"});
    for (const auto& [k, v] : d["exact_identities"].items()) t.add({k, yes_no(v)});
    t.print(os);
    os << '\n';
    Table r({"N", "rank", "dim ker", "dim coker"});
    for (const auto& row : d["truncations"])
      r.add({row["n"].dump(), row["rank"].dump(), row["kernel_dim"].dump(), row["cokernel_dim"].dump()});
    r.print(os);
    os << '\n' << d["conclusion"].get<std::string>() << '\n' << d["criterion"].get<std::string>() << '\n';
  } else if (kind == "family") {
    Table t({"ring", "|R|", "|U(R)|", "idempotents", "unit regular", "verdicts", "consistent", "chain",
             "corollary"});
    for (const auto& r : p["rings"]) {
      std::size_t verdicts = 0;
      bool consistent = true, chain = true;
      for (const auto& blk : r["blocks"]) {
        verdicts += blk["verdicts"].size();
        consistent = consistent && blk["all_consistent"].get<bool>();
        chain = chain && blk["chain_ok"].get<bool>();
      }
      t.add({r["ring"].get<std::string>(), r["size"].dump(), r["unit_count"].dump(),
             std::to_string(r["blocks"].size()), yes_no(r["unit_regular_ring"]),
             std::to_string(verdicts), consistent ? "yes" : "no", chain ? "ok" : "VIOLATED",
             r["star_corollary"]["ok"].get<bool>() ? "ok" : "FAILED"});
    }
    t.print(os);
  } else {
    os << p.dump(2) << '\n';
  }
}

}  // namespace detail

/// Human tables or JSON. JSON output is a pure function of the document.
inline std::string emit_report(const ReportDocument& doc, Format format) {
  if (format == Format::Json) return to_json(doc).dump(2) + "\n";
  std::ostringstream os;
  os << "command: ";
  for (std::size_t i = 0; i < doc.command.size(); ++i) os << (i ? " " : "") << doc.command[i];
  os << '\n';
  if (!doc.ring.empty()) os << "ring: " << doc.ring << '\n';
  os << "status: " << to_string(doc.status) << "\n\n";
  detail::render_payload(os, doc.payload);
  return os.str();
}

}  // namespace unitreg
