// dehncert: certificates for effective hyperbolic Dehn drilling and filling.
//
//   dehncert run <manifest.json>        one report per query in the manifest
//   dehncert batch <dir | rows.csv>     many queries, with a verdict summary
//   dehncert eval <function> [args...]  evaluate a single formula
//
// Exit codes: 0 all certified, 1 some hypothesis failed, 2 input error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dehncert/app.hpp"

namespace {

void emit(const dehncert::app::Outcome& o) {
  std::cout << o.out << std::flush;
  std::cerr << o.err << std::flush;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Certificates for effective hyperbolic Dehn drilling and filling"};
  cli.require_subcommand(1);

  dehncert::app::Settings settings;
  std::string format = "json";
  double tolerance = 0.0;
  int max_iter = settings.options.tolerance.max_iter;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--tolerance", tolerance, "Absolute and relative tolerance of the bracketing solver")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", max_iter, "Iteration cap of the bracketing solver")->check(CLI::PositiveNumber);
    sub->add_flag("--assume-meyerhoff", settings.options.assume_meyerhoff,
                  "Use the sqrt(3)/2 cusp area floor when true cusp areas are unknown");
    sub->add_flag("--strict-schema", settings.strict_schema, "Reject unknown fields and columns");
  };

  std::string manifest_path;
  auto* run = cli.add_subcommand("run", "Certify every query of a manifest");
  run->add_option("manifest", manifest_path, "Manifest JSON file")->required();
  add_common(run);

  std::string batch_path;
  unsigned jobs = 1;
  auto* batch = cli.add_subcommand("batch", "Certify a CSV of queries or a directory of manifests");
  batch->add_option("input", batch_path, "CSV file or directory of manifest JSON files")->required();
  batch->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  add_common(batch);

  std::string function;
  std::vector<std::string> args;
  auto* eval = cli.add_subcommand("eval", "Evaluate a single function");
  eval->add_option("function", function, "Function name (see --list)");
  eval->add_option("args", args, "Arguments")->allow_extra_args();
  bool list = false;
  eval->add_flag("--list", list, "List the available functions");
  add_common(eval);
  eval->prefix_command(false);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : dehncert::app::kExitInputError;
  }

  settings.format = format == "table" ? dehncert::app::Format::table : dehncert::app::Format::json;
  if (tolerance > 0.0) settings.options.tolerance.abs_tol = settings.options.tolerance.rel_tol = tolerance;
  settings.options.tolerance.max_iter = max_iter;
  settings.jobs = jobs;

  dehncert::app::Outcome outcome;
  if (*run) {
    outcome = dehncert::app::run(manifest_path, settings);
  } else if (*batch) {
    outcome = dehncert::app::batch(batch_path, settings);
  } else if (list || function.empty()) {
    outcome = {dehncert::app::eval_usage(), "", list ? 0 : dehncert::app::kExitInputError};
  } else {
    outcome = dehncert::app::eval(function, args, settings);
  }
  emit(outcome);
  return outcome.exit_code;
}
