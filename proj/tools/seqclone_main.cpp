// Command-line front end: sequential quantum cloning machines.
//
//   seqclone clone   --mode universal --clones 2 --theta 1.0472 --phi 0.5
//   seqclone verify  --m-min 2 --m-max 6 --mode both
//   seqclone table   --mode phase-covariant --clones 3
//   seqclone mps     --clones 3 --input-state 0
//
// All output is a single JSON document on stdout (or --out FILE).
// Exit codes: 0 success, 2 bad arguments, 3 numeric failure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sqc/commands.hpp"

namespace {

int emit(const sqc::CommandResult& result, const std::string& out_path) {
  const std::string text = result.document.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open output file: " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential 1 -> M qubit cloning machines"};
  app.require_subcommand(1);
  app.fallthrough();  // let subcommands inherit --out

  std::string out_path;
  app.add_option("--out", out_path, "write the JSON document to this file");

  sqc::CloneCmdOptions clone_opt;
  CLI::App* clone_cmd = app.add_subcommand("clone", "run the full protocol");
  clone_cmd->add_option("--mode", clone_opt.mode,
                        "universal or phase-covariant");
  clone_cmd->add_option("--clones", clone_opt.clones, "number of clones M");
  clone_cmd->add_option("--theta", clone_opt.theta, "input polar angle");
  clone_cmd->add_option("--phi", clone_opt.phi, "input azimuthal angle");
  clone_cmd->add_option("--branch", clone_opt.branch,
                        "measurement branch: auto, 0, or 1");
  clone_cmd->add_option("--seed", clone_opt.seed, "RNG seed");
  clone_cmd->add_option("--tol", clone_opt.tol, "numeric tolerance");

  sqc::VerifyCmdOptions verify_opt;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the invariant sweep");
  verify_cmd->add_option("--m-min", verify_opt.m_min, "smallest M");
  verify_cmd->add_option("--m-max", verify_opt.m_max, "largest M");
  verify_cmd->add_option("--mode", verify_opt.mode,
                         "universal, phase-covariant, or both");
  verify_cmd->add_option("--samples", verify_opt.samples,
                         "random inputs per M");
  verify_cmd->add_option("--seed", verify_opt.seed, "RNG seed");
  verify_cmd->add_option("--tol", verify_opt.tol, "numeric tolerance");

  sqc::TableCmdOptions table_opt;
  CLI::App* table_cmd =
      app.add_subcommand("table", "dump the closed-form step matrices");
  table_cmd->add_option("--mode", table_opt.mode,
                        "universal or phase-covariant");
  table_cmd->add_option("--clones", table_opt.clones, "number of clones M");
  table_cmd->add_option("--tol", table_opt.tol, "numeric tolerance");

  sqc::MpsCmdOptions mps_opt;
  CLI::App* mps_cmd = app.add_subcommand(
      "mps", "decompose a branch target into canonical form");
  mps_cmd->add_option("--clones", mps_opt.clones, "number of clones M");
  mps_cmd->add_option("--input-state", mps_opt.input_state,
                      "branch target: 0 or 1");
  mps_cmd->add_option("--tol", mps_opt.tol, "truncation tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help exits 0; parse errors map to 2
  }

  if (clone_cmd->parsed()) return emit(sqc::cmd_clone(clone_opt), out_path);
  if (verify_cmd->parsed()) return emit(sqc::cmd_verify(verify_opt), out_path);
  if (table_cmd->parsed()) return emit(sqc::cmd_table(table_opt), out_path);
  if (mps_cmd->parsed()) return emit(sqc::cmd_mps(mps_opt), out_path);
  return 2;
}
