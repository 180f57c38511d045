// Batch front end: loads a workspace document and runs one command
// against it.  All inputs come from the document and the flags, so equal
// invocations produce byte-identical reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "measfield/checks.hpp"
#include "measfield/workspace.hpp"

namespace {

std::map<std::string, std::string> parse_kv(
    const std::vector<std::string>& args) {
  std::map<std::string, std::string> out;
  for (const std::string& a : args) {
    auto pos = a.find('=');
    if (pos == std::string::npos)
      throw measfield::ParseError("argument '" + a + "' is not key=value");
    out[a.substr(0, pos)] = a.substr(pos + 1);
  }
  return out;
}

int emit(const measfield::RunResult& result, const std::string& out_path) {
  if (out_path == "-") {
    std::cout << result.report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << result.report;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"direct integrals, measure kernels and functor calculus "
               "over finite Borel spaces"};
  app.require_subcommand(1);

  std::string input;
  std::string out_path = "-";
  std::string suite = "all";
  double tol = 1e-9;
  app.add_option("--input", input, "workspace document (JSON)")
      ->required();
  app.add_option("--tol", tol, "tolerance for non-strict law checks")
      ->capture_default_str();
  app.add_option("--suite", suite, "check suite name, or 'all'")
      ->capture_default_str();
  app.add_option("--out", out_path, "report destination, '-' for stdout")
      ->capture_default_str();

  std::map<std::string, std::vector<std::string>> kv_args;
  for (const char* name : {"info", "integrate", "apply", "compose", "check"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("args", kv_args[name], "key=value arguments");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    measfield::Workspace ws = measfield::load_file(input);
    std::string command = app.get_subcommands().front()->get_name();
    std::map<std::string, std::string> args = parse_kv(kv_args[command]);
    if (command == "check" && !args.count("suite")) args["suite"] = suite;
    return emit(measfield::run(command, args, ws, tol), out_path);
  } catch (const measfield::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
