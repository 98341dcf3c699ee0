#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "limsat/ilp.hpp"

namespace limsat::harness {

// SAT-competition exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 2;
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitTimeout = 30;

enum class OutputFormat { kCsv, kJson, kTable };
enum class ExportFormat { kLp, kMps };

struct RunConfig {
  double timeout_s = 5000.0;
  std::optional<std::uint32_t> radix;
  ilp::ModelForm form = ilp::ModelForm::kTwoBlock;
  bool clause_upper_bound = false;
  int workers = 1;
  OutputFormat format = OutputFormat::kCsv;
};

// Throws Error(kDimensionMismatch) naming the offending field.
void validate(const RunConfig& config);

enum class BenchResult { kSat, kUnsat, kTimeout, kError };
std::string_view ToString(BenchResult result);

struct BenchRecord {
  std::string filename;
  std::int32_t variables = 0;
  std::size_t clauses = 0;
  BenchResult result = BenchResult::kError;
  double time_s = 0.0;   // solve call only
  double total_s = 0.0;  // parse + normalize + model build + solve
  std::string message;   // error text for kError
};

// Full pipeline for one file. Never throws; failures become kError records.
BenchRecord run_instance(const std::filesystem::path& path,
                         const RunConfig& config);

// All *.cnf files directly inside `dir`, sorted by filename.
std::vector<std::filesystem::path> list_cnf_files(
    const std::filesystem::path& dir);

// One record per file in filename order, whatever the worker count.
std::vector<BenchRecord> run_bench(const std::vector<std::filesystem::path>& files,
                                   const RunConfig& config);

void write_records(std::ostream& out, const std::vector<BenchRecord>& records,
                   OutputFormat format);
std::string summary_line(const std::vector<BenchRecord>& records);

// --- Subcommands ------------------------------------------------------------
// Each returns the process exit code and writes only to the given streams.

int cmd_convert(const std::filesystem::path& input, ExportFormat format,
                const std::optional<std::filesystem::path>& output,
                const RunConfig& config, std::ostream& out, std::ostream& err);

int cmd_solve(const std::filesystem::path& input, const RunConfig& config,
              std::ostream& out, std::ostream& err);

int cmd_bench(const std::filesystem::path& dir, const RunConfig& config,
              const std::optional<std::filesystem::path>& output,
              std::ostream& out, std::ostream& err);

struct SspOptions {
  std::optional<std::uint32_t> radix;
  bool run_dp = false;
  bool dump_rows = false;
  std::uint64_t value_limit = 100'000'000;
};

int cmd_ssp(const std::filesystem::path& input, const SspOptions& options,
            std::ostream& out, std::ostream& err);

int cmd_oracle(const std::filesystem::path& input, std::int32_t max_vars,
               std::ostream& out, std::ostream& err);

}  // namespace limsat::harness
