#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "limsat/cnf.hpp"
#include "limsat/error.hpp"
#include "limsat/generate.hpp"
#include "limsat/harness.hpp"

namespace fs = std::filesystem;
using namespace limsat;

namespace {

const std::map<std::string, ilp::ModelForm> kForms = {
    {"twoblock", ilp::ModelForm::kTwoBlock},
    {"combined", ilp::ModelForm::kCombined}};

const std::map<std::string, harness::OutputFormat> kOutputFormats = {
    {"csv", harness::OutputFormat::kCsv},
    {"json", harness::OutputFormat::kJson},
    {"table", harness::OutputFormat::kTable}};

const std::map<std::string, harness::ExportFormat> kExportFormats = {
    {"lp", harness::ExportFormat::kLp}, {"mps", harness::ExportFormat::kMps}};

void AddModelFlags(CLI::App* cmd, harness::RunConfig& config) {
  cmd->add_option("--form", config.form, "Model form")
      ->transform(CLI::CheckedTransformer(kForms, CLI::ignore_case))
      ->option_text("twoblock|combined");
  cmd->add_flag("--clause-upper-bound", config.clause_upper_bound,
                "Add clause coverage upper bounds (<= clause width)");
}

std::optional<fs::path> OptionalPath(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limsat: SAT to subset-sum and 0-1 ILP transformations"};
  app.require_subcommand(1);

  harness::RunConfig config;
  std::string input;
  std::string out_path;
  std::uint32_t radix = 0;

  auto* convert = app.add_subcommand("convert", "Export the 0-1 model as LP or MPS");
  harness::ExportFormat export_format = harness::ExportFormat::kLp;
  convert->add_option("input", input, "DIMACS CNF file")->required();
  convert->add_option("--format", export_format, "lp or mps")
      ->transform(CLI::CheckedTransformer(kExportFormats, CLI::ignore_case))
      ->option_text("lp|mps");
  convert->add_option("-o,--out", out_path, "Output file (default stdout)");
  AddModelFlags(convert, config);

  auto* solve = app.add_subcommand("solve", "Solve one instance via the 0-1 model");
  solve->add_option("input", input, "DIMACS CNF file")->required();
  solve->add_option("--timeout", config.timeout_s, "Seconds (default 5000)");
  AddModelFlags(solve, config);

  auto* bench = app.add_subcommand("bench", "Solve every .cnf file in a directory");
  bench->add_option("directory", input, "Directory of .cnf files")->required();
  bench->add_option("--timeout", config.timeout_s, "Seconds per instance");
  bench->add_option("--workers", config.workers, "Instances solved in parallel");
  bench->add_option("--format", config.format, "csv, json or table")
      ->transform(CLI::CheckedTransformer(kOutputFormats, CLI::ignore_case))
      ->option_text("csv|json|table");
  bench->add_option("-o,--out", out_path, "Output file (default stdout)");
  AddModelFlags(bench, config);

  auto* ssp_cmd = app.add_subcommand("ssp", "Print the subset-sum reduction table");
  harness::SspOptions ssp_options;
  ssp_cmd->add_option("input", input, "DIMACS CNF file")->required();
  ssp_cmd->add_option("--radix", radix, "Digit radix (default max(10, width+4))");
  ssp_cmd->add_flag("--dp", ssp_options.run_dp, "Solve with subset-sum DP");
  ssp_cmd->add_flag("--rows", ssp_options.dump_rows,
                    "Print '<label> <digits...>' lines instead of the grid");
  ssp_cmd->add_option("--value-limit", ssp_options.value_limit,
                      "Largest target value the DP accepts");

  auto* oracle = app.add_subcommand("oracle", "Brute-force satisfiability check");
  std::int32_t max_vars = cnf::kDefaultMaxVars;
  oracle->add_option("input", input, "DIMACS CNF file")->required();
  oracle->add_option("--max-vars", max_vars, "Refuse formulas with more variables");

  auto* gen = app.add_subcommand("gen", "Write a generated DIMACS instance");
  std::string family = "random";
  std::int32_t vars = 20;
  std::size_t clauses = 91;
  std::size_t width = 3;
  std::uint64_t seed = 1;
  std::int32_t pigeons = 5;
  std::int32_t holes = 4;
  gen->add_option("family", family, "random or php")
      ->check(CLI::IsMember({"random", "php"}));
  gen->add_option("--vars", vars, "Variables (random)");
  gen->add_option("--clauses", clauses, "Clauses (random)");
  gen->add_option("--width", width, "Literals per clause (random)");
  gen->add_option("--seed", seed, "RNG seed (random)");
  gen->add_option("--pigeons", pigeons, "Pigeons (php)");
  gen->add_option("--holes", holes, "Holes (php)");
  gen->add_option("-o,--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends report success; usage errors share the error code.
    return app.exit(e) == 0 ? harness::kExitOk : harness::kExitError;
  }

  try {
    if (*solve || *bench) harness::validate(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return harness::kExitError;
  }

  if (*convert) {
    return harness::cmd_convert(input, export_format, OptionalPath(out_path),
                                config, std::cout, std::cerr);
  }
  if (*solve) return harness::cmd_solve(input, config, std::cout, std::cerr);
  if (*bench) {
    return harness::cmd_bench(input, config, OptionalPath(out_path), std::cout,
                              std::cerr);
  }
  if (*ssp_cmd) {
    if (radix != 0) ssp_options.radix = radix;
    return harness::cmd_ssp(input, ssp_options, std::cout, std::cerr);
  }
  if (*oracle) return harness::cmd_oracle(input, max_vars, std::cout, std::cerr);

  // gen
  try {
    const cnf::CnfFormula f = family == "php"
                                  ? gen::pigeonhole(pigeons, holes)
                                  : gen::random_ksat(vars, clauses, width, seed);
    const std::string text = "c " + f.source_name() + "\n" + cnf::write_dimacs(f);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      file << text;
      if (!file) throw Error(ErrorCode::kIo, "cannot write " + out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return harness::kExitError;
  }
  return harness::kExitOk;
}
