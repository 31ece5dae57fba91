#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "sqc/commands.hpp"

using namespace sqc;
using nlohmann::json;

TEST_CASE("clone command: universal two-clone run") {
  CloneCmdOptions opt;
  opt.clones = 2;
  opt.theta = 1.0472;
  opt.phi = 0.5;
  const CommandResult r = cmd_clone(opt);
  REQUIRE(r.exit_code == 0);
  const json& d = r.document;
  CHECK(d.at("status") == "ok");
  CHECK(d.at("schema_version") == "1.0");
  CHECK(d.contains("generated_at"));
  const json& rep = d.at("report");
  CHECK(rep.at("d_total") == 4);
  CHECK(rep.at("chi_observed") == 2);
  CHECK(std::abs(rep.at("theory_fidelity").get<double>() - 5.0 / 6.0) < 1e-12);
  for (const auto& f : rep.at("per_clone_fidelity"))
    CHECK(std::abs(f.get<double>() - 5.0 / 6.0) < 1e-9);
  CHECK(rep.at("output_overlap_modulus").get<double>() >= 1.0 - 1e-9);
  CHECK(rep.at("output").at("n_qubits") == 3);
}

TEST_CASE("clone command: forced branches agree") {
  CloneCmdOptions opt;
  opt.clones = 3;
  opt.branch = "0";
  const CommandResult r0 = cmd_clone(opt);
  opt.branch = "1";
  const CommandResult r1 = cmd_clone(opt);
  REQUIRE(r0.exit_code == 0);
  REQUIRE(r1.exit_code == 0);
  CHECK(r0.document.at("report").at("branch_taken") == 0);
  CHECK(r1.document.at("report").at("branch_taken") == 1);
}

TEST_CASE("clone command rejects even clone numbers on the equator machine") {
  CloneCmdOptions opt;
  opt.mode = "phase-covariant";
  opt.clones = 4;
  const CommandResult r = cmd_clone(opt);
  CHECK(r.exit_code == 2);
  CHECK(r.document.at("status") == "error");
  const std::string msg = r.document.at("error").at("message");
  CHECK(msg.find("odd") != std::string::npos);
}

TEST_CASE("clone command rejects an oversized clone number") {
  CloneCmdOptions opt;
  opt.clones = 13;
  const CommandResult r = cmd_clone(opt);
  CHECK(r.exit_code == 2);
  CHECK(r.document.at("error").at("kind") == "invalid_argument");
}

TEST_CASE("clone command rejects an unknown mode or branch") {
  CloneCmdOptions opt;
  opt.mode = "sideways";
  CHECK(cmd_clone(opt).exit_code == 2);
  CloneCmdOptions opt2;
  opt2.branch = "maybe";
  CHECK(cmd_clone(opt2).exit_code == 2);
}

TEST_CASE("verify command: full sweep passes and is deterministic") {
  VerifyCmdOptions opt;
  opt.m_min = 2;
  opt.m_max = 4;
  opt.samples = 3;
  const CommandResult a = cmd_verify(opt);
  const CommandResult b = cmd_verify(opt);
  REQUIRE(a.exit_code == 0);
  CHECK(a.document.at("all_pass") == true);
  // Byte-identical repeat: no timestamps, seeded RNG.
  CHECK(a.document.dump() == b.document.dump());

  // Expected block structure: universal 2,3,4 then phase-covariant 3.
  const json& blocks = a.document.at("results");
  REQUIRE(blocks.size() == 4);
  CHECK(blocks[0].at("mode") == "universal");
  CHECK(blocks[3].at("mode") == "phase-covariant");
  CHECK(blocks[3].at("m") == 3);
  for (const auto& blk : blocks)
    for (const auto& chk : blk.at("checks")) CHECK(chk.at("pass") == true);
}

TEST_CASE("verify command: equator machine reports d_total = m + 1") {
  VerifyCmdOptions opt;
  opt.m_min = 3;
  opt.m_max = 5;
  opt.mode = "phase-covariant";
  opt.samples = 2;
  const CommandResult r = cmd_verify(opt);
  REQUIRE(r.exit_code == 0);
  for (const auto& blk : r.document.at("results")) {
    const std::size_t m = blk.at("m").get<std::size_t>();
    bool found = false;
    for (const auto& chk : blk.at("checks")) {
      if (chk.at("name") == "d_total") {
        CHECK(chk.at("measured").get<double>() ==
              doctest::Approx(static_cast<double>(m + 1)));
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("verify command rejects a bad range") {
  VerifyCmdOptions opt;
  opt.m_min = 5;
  opt.m_max = 2;
  CHECK(cmd_verify(opt).exit_code == 2);
  VerifyCmdOptions opt2;
  opt2.m_max = 13;
  const CommandResult r = cmd_verify(opt2);
  CHECK(r.exit_code == 2);
  const std::string msg = r.document.at("error").at("message");
  CHECK(msg.find("cap") != std::string::npos);
}

TEST_CASE("table command: step counts and dimensions") {
  TableCmdOptions opt;
  opt.clones = 2;
  const CommandResult r = cmd_table(opt);
  REQUIRE(r.exit_code == 0);
  CHECK(r.document.at("n_steps") == 3);
  CHECK(r.document.at("d") == 2);
  CHECK(r.document.at("max_defect").get<double>() < 1e-10);
  REQUIRE(r.document.at("steps").size() == 3);
  for (const auto& st : r.document.at("steps")) {
    CHECK(st.at("v0").at("rows") == 2);
    CHECK(st.at("defect").get<double>() < 1e-10);
  }

  TableCmdOptions one;
  one.clones = 1;
  CHECK(cmd_table(one).document.at("n_steps") == 1);

  TableCmdOptions pc;
  pc.mode = "phase-covariant";
  pc.clones = 3;
  const CommandResult rpc = cmd_table(pc);
  CHECK(rpc.document.at("n_steps") == 3);
  CHECK(rpc.document.at("d") == 2);
}

TEST_CASE("table command rejects invalid requests") {
  TableCmdOptions opt;
  opt.clones = 13;
  CHECK(cmd_table(opt).exit_code == 2);
  TableCmdOptions pc;
  pc.mode = "phase-covariant";
  pc.clones = 4;
  CHECK(cmd_table(pc).exit_code == 2);
}

TEST_CASE("mps command reports the expected bond dimension") {
  MpsCmdOptions opt;
  opt.clones = 3;
  const CommandResult r = cmd_mps(opt);
  REQUIRE(r.exit_code == 0);
  CHECK(r.document.at("form").at("chi") == 3);
  CHECK(r.document.at("roundtrip_overlap").get<double>() >= 1.0 - 1e-9);
  CHECK(r.document.at("norm_deviation").get<double>() < 1e-9);

  MpsCmdOptions other;
  other.clones = 2;
  other.input_state = 1;
  CHECK(cmd_mps(other).document.at("form").at("chi") == 2);

  MpsCmdOptions bad;
  bad.input_state = 2;
  CHECK(cmd_mps(bad).exit_code == 2);
}

TEST_CASE("documents survive a serialization round trip") {
  VerifyCmdOptions opt;
  opt.m_min = 2;
  opt.m_max = 2;
  opt.samples = 1;
  const CommandResult r = cmd_verify(opt);
  const json parsed = json::parse(r.document.dump());
  CHECK(parsed == r.document);
}
