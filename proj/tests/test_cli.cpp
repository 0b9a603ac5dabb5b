#include <gtest/gtest.h>

#include <cstdlib>

#include "unitreg/cli.hpp"

using namespace unitreg;

namespace {

CommandResult run(std::vector<std::string> args) { return run_command(args); }

Json json_of(const CommandResult& r) { return Json::parse(r.out); }

std::vector<std::uint64_t> ints(const Json& arr) {
  std::vector<std::uint64_t> out;
  for (const auto& x : arr) out.push_back(x.get<std::uint64_t>());
  return out;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { setenv(kSizeCapEnv, value, 1); }
  ~EnvGuard() { unsetenv(kSizeCapEnv); }
};

}  // namespace

TEST(Cli, ClassifyZ4) {
  auto r = run({"classify", "--ring", "Z4", "--json"});
  ASSERT_EQ(r.exit_code, kExitPass) << r.err;
  auto j = json_of(r);
  EXPECT_EQ(j["schema_version"], "1.0");
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["ring"], "Z4");
  EXPECT_EQ(ints(j["payload"]["unit_regular"]), (std::vector<std::uint64_t>{0, 1, 3}));
  EXPECT_EQ(ints(j["payload"]["idempotents"]), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_EQ(j["payload"]["elements"][2]["kind"], "not_regular");
  EXPECT_TRUE(j.contains("timing"));
}

TEST(Cli, HumanOutputCarriesLabels) {
  auto r = run({"verify-theorem", "--ring", "Z6"});
  ASSERT_EQ(r.exit_code, kExitPass);
  EXPECT_NE(r.out.find("(3')"), std::string::npos);
  EXPECT_NE(r.out.find("(4')"), std::string::npos);
  auto c = run({"classify", "--ring", "Z4"});
  EXPECT_NE(c.out.find("ur(R): {0, 1, 3}"), std::string::npos) << c.out;
}

TEST(Cli, VerifyTheoremZ6) {
  auto r = run({"--json", "verify-theorem", "--ring", "Z6"});
  ASSERT_EQ(r.exit_code, kExitPass) << r.err;
  auto p = json_of(r)["payload"];
  EXPECT_EQ(p["idempotents_processed"], 4);
  EXPECT_EQ(p["blocks"].size(), 4u);
  for (const auto& blk : p["blocks"]) {
    EXPECT_TRUE(blk["all_consistent"].get<bool>());
    EXPECT_TRUE(blk["chain_ok"].get<bool>());
    EXPECT_TRUE(blk["witnesses_reverified"].get<bool>());
  }
  EXPECT_TRUE(p["repro_bundles"].empty());
  EXPECT_TRUE(p["star_corollary"]["ok"].get<bool>());
}

TEST(Cli, SingleIdempotent) {
  auto r = run({"verify-theorem", "--ring", "M2(Z2)", "--idempotent", "8", "--json"});
  ASSERT_EQ(r.exit_code, kExitPass);
  auto p = json_of(r)["payload"];
  EXPECT_EQ(p["idempotents_processed"], 1);
  EXPECT_EQ(p["blocks"][0]["e"], 8);
  EXPECT_EQ(run({"verify-theorem", "--ring", "Z6", "--idempotent", "2"}).exit_code, kExitUsage);
  EXPECT_EQ(run({"verify-theorem", "--ring", "Z6", "--idempotent", "x"}).exit_code, kExitUsage);
  EXPECT_EQ(run({"verify-theorem", "--ring", "Z6", "--idempotent", "6"}).exit_code, kExitUsage);
}

TEST(Cli, InjectedFaultFails) {
  auto r = run({"verify-theorem", "--ring", "Z6", "--inject-fault", "--json"});
  EXPECT_EQ(r.exit_code, kExitFail);
  auto j = json_of(r);
  EXPECT_EQ(j["status"], "fail");
  ASSERT_FALSE(j["payload"]["repro_bundles"].empty());
  const auto& bundle = j["payload"]["repro_bundles"][0];
  EXPECT_EQ(bundle["ring"], "Z6");
  EXPECT_TRUE(bundle.contains("e"));
  EXPECT_TRUE(bundle.contains("verdict"));
}

TEST(Cli, WitnessZ6) {
  auto r = run({"witness", "--ring", "Z6", "--e", "3", "--a", "3", "--b", "4", "--u", "1", "--json"});
  ASSERT_EQ(r.exit_code, kExitPass) << r.err;
  auto w = json_of(r)["payload"]["witness"];
  EXPECT_EQ(w["u_prime"], 3);
  EXPECT_EQ(w["v_prime"], 3);
  EXPECT_TRUE(w["ok"].get<bool>());
}

TEST(Cli, WitnessPreconditionFailure) {
  auto r = run({"witness", "--ring", "Z6", "--e", "3", "--a", "2", "--b", "4", "--u", "1", "--json"});
  EXPECT_EQ(r.exit_code, kExitFail);
  auto j = json_of(r);
  EXPECT_EQ(j["status"], "fail");
  ASSERT_TRUE(j["payload"].contains("violations"));
  EXPECT_EQ(j["payload"]["violations"][0], "a is not in eRe");
  EXPECT_EQ(run({"witness", "--ring", "Z6", "--e", "2", "--a", "0", "--b", "0", "--u", "1"}).exit_code,
            kExitUsage);
}

TEST(Cli, ShiftDemo) {
  auto r = run({"shift-demo", "--truncation", "8", "--json"});
  ASSERT_EQ(r.exit_code, kExitPass);
  auto d = json_of(r)["payload"]["demo"];
  EXPECT_EQ(d["truncations"].size(), 7u);
  EXPECT_EQ(d["criterion_status"], "cited");
  EXPECT_EQ(run({"shift-demo", "--truncation", "1"}).exit_code, kExitUsage);
}

TEST(Cli, UsageErrors) {
  auto bad = run({"classify", "--ring", "Q7"});
  EXPECT_EQ(bad.exit_code, kExitUsage);
  EXPECT_NE(bad.err.find("byte 0"), std::string::npos);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_FALSE(bad.document.has_value());
  EXPECT_EQ(run({"classify", "--ring", "Z0"}).exit_code, kExitUsage);
  EXPECT_EQ(run({}).exit_code, kExitUsage);
  EXPECT_EQ(run({"classify"}).exit_code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).exit_code, kExitUsage);
}

TEST(Cli, SizeCapFlag) {
  auto r = run({"classify", "--ring", "M2(Z4)", "--size-cap", "100", "--json"});
  EXPECT_EQ(r.exit_code, kExitCapped);
  auto j = json_of(r);
  EXPECT_EQ(j["status"], "capped");
  EXPECT_EQ(j["payload"]["cardinality"], 256);
  EXPECT_EQ(j["payload"]["cap"], 100);
  EXPECT_EQ(run({"classify", "--ring", "M4(Z16)"}).exit_code, kExitCapped);
}

TEST(Cli, SizeCapEnvironment) {
  {
    EnvGuard env("10");
    EXPECT_EQ(run({"classify", "--ring", "Z12"}).exit_code, kExitCapped);
    // flag wins over the environment
    EXPECT_EQ(run({"classify", "--ring", "Z12", "--size-cap", "12"}).exit_code, kExitPass);
  }
  {
    EnvGuard env("lots");
    EXPECT_EQ(run({"classify", "--ring", "Z12"}).exit_code, kExitUsage);
  }
  EXPECT_EQ(run({"classify", "--ring", "Z12"}).exit_code, kExitPass);
}

TEST(Cli, JsonIsByteIdenticalApartFromTiming) {
  auto a = json_of(run({"verify-theorem", "--ring", "T2(Z2)", "--json"}));
  auto b = json_of(run({"verify-theorem", "--ring", "T2(Z2)", "--json"}));
  a.erase("timing");
  b.erase("timing");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Cli, Family) {
  auto r = run({"family", "--json"});
  ASSERT_EQ(r.exit_code, kExitPass) << r.err;
  auto p = json_of(r)["payload"];
  ASSERT_EQ(p["rings"].size(), 10u);
  EXPECT_EQ(p["rings"][0]["ring"], "Z4");
  EXPECT_EQ(p["rings"][9]["ring"], "M2(Z2)xZ2");
  EXPECT_EQ(p["verdict_blocks"], 2 + 4 + 2 + 4 + 4 + 6 + 8 + 8 + 14 + 16);
  for (const auto& ring : p["rings"]) {
    EXPECT_TRUE(ring["axioms_passed"].get<bool>());
    EXPECT_TRUE(ring["embeddings_ok"].get<bool>());
  }
}
