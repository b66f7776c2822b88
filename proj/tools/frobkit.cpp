#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "frobkit/cli.hpp"
#include "frobkit/errors.hpp"

using namespace frobkit;

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Frobenius manifolds and conjugate pencils", "frobkit"};
  app.set_version_flag("--version", kVersion);

  std::string command;
  std::string path;
  std::string json_out;
  RunOptions opt;
  app.add_option("command", command, "verify, conjugate, invert, pencil or oracle")
      ->required()
      ->check(CLI::IsMember({"verify", "conjugate", "invert", "pencil", "oracle"}));
  app.add_option("spec-file", path, "spec file (JSON)")->required();
  app.add_option("--json", json_out, "write the JSON report here; '-' for stdout");
  app.add_option("--samples", opt.samples, "oracle sample points")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "oracle seed");
  app.add_option("--check", opt.only, "restrict to these checks")->delimiter(',');
  app.add_flag("--timing", opt.timing, "record wall time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  Report report;
  try {
    std::string digest;
    FrobeniusSpec spec = load_spec(path, &digest);
    report = run_command(command, spec, digest, opt);
  } catch (const SpecError& e) {
    std::cerr << "frobkit: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "frobkit: " << e.what() << "\n";
    return kInputError;
  }

  if (json_out == "-") {
    std::cout << emit_json(report);
  } else {
    std::cout << emit_text(report);
    if (!json_out.empty()) {
      std::ofstream out(json_out);
      if (!out) {
        std::cerr << "frobkit: cannot write '" << json_out << "'\n";
        return kInputError;
      }
      out << emit_json(report);
    }
  }
  return report.exit_code;
}
