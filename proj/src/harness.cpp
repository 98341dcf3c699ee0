#include "limsat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "limsat/cnf.hpp"
#include "limsat/error.hpp"
#include "limsat/solver.hpp"
#include "limsat/ssp.hpp"

namespace limsat::harness {

namespace fs = std::filesystem;

void validate(const RunConfig& config) {
  if (config.workers < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "workers must be >= 1");
  }
  if (!(config.timeout_s > 0.0)) {
    throw Error(ErrorCode::kDimensionMismatch, "timeout must be > 0 seconds");
  }
}

std::string_view ToString(BenchResult result) {
  switch (result) {
    case BenchResult::kSat: return "sat";
    case BenchResult::kUnsat: return "unsat";
    case BenchResult::kTimeout: return "timeout";
    case BenchResult::kError: return "error";
  }
  return "error";
}

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct SolvedInstance {
  BenchRecord record;
  cnf::Assignment witness;  // filled for kSat
};

SolvedInstance SolveFile(const fs::path& path, const RunConfig& config) {
  const auto start = Clock::now();
  SolvedInstance solved;
  BenchRecord& rec = solved.record;
  rec.filename = path.filename().string();
  try {
    const cnf::CnfFormula formula = cnf::read_dimacs_file(path.string());
    rec.variables = formula.num_vars();
    rec.clauses = formula.num_clauses();

    const cnf::Normalized norm = cnf::normalize(formula);
    if (norm.report.has_empty_clause) {
      rec.result = BenchResult::kUnsat;
      rec.total_s = Seconds(start);
      return solved;
    }
    const ilp::IlpModel model = ilp::build_limsat_model(
        norm.formula, {config.form, config.clause_upper_bound});
    const solver::SolveOutcome outcome = solver::solve(model, config.timeout_s);
    rec.time_s = outcome.elapsed_s;

    switch (outcome.status) {
      case solver::SolveStatus::kFeasible: {
        cnf::Assignment a =
            ilp::solution_to_assignment(model, *outcome.witness, norm.formula);
        if (cnf::evaluate(formula, a) != cnf::Evaluation::kSatisfied) {
          throw Error(ErrorCode::kInfeasibleWitness,
                      "decoded assignment does not satisfy the formula");
        }
        rec.result = BenchResult::kSat;
        solved.witness = std::move(a);
        break;
      }
      case solver::SolveStatus::kInfeasible:
        rec.result = BenchResult::kUnsat;
        break;
      case solver::SolveStatus::kTimedOut:
        rec.result = BenchResult::kTimeout;
        break;
    }
  } catch (const std::exception& e) {
    rec.result = BenchResult::kError;
    rec.message = e.what();
  }
  rec.total_s = Seconds(start);
  return solved;
}

std::string FormatTime(double seconds) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << seconds;
  return s.str();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string_view FormName(ilp::ModelForm form) {
  return form == ilp::ModelForm::kTwoBlock ? "twoblock" : "combined";
}

}  // namespace

BenchRecord run_instance(const fs::path& path, const RunConfig& config) {
  return SolveFile(path, config).record;
}

std::vector<fs::path> list_cnf_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cnf") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

std::vector<BenchRecord> run_bench(const std::vector<fs::path>& files,
                                   const RunConfig& config) {
  std::vector<BenchRecord> records(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      records[i] = run_instance(files[i], config);
    }
  };
  const auto threads = static_cast<std::size_t>(
      std::clamp<int>(config.workers, 1, static_cast<int>(files.size()) + 1));
  if (threads <= 1) {
    worker();
    return records;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();  // joins
  return records;
}

void write_records(std::ostream& out, const std::vector<BenchRecord>& records,
                   OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv:
      out << "filename,variables,clauses,result,time_s\n";
      for (const BenchRecord& r : records) {
        out << CsvField(r.filename) << ',' << r.variables << ',' << r.clauses
            << ',' << ToString(r.result) << ',' << FormatTime(r.time_s)
            << '\n';
      }
      break;
    case OutputFormat::kJson: {
      auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };
      nlohmann::json doc = nlohmann::json::array();
      for (const BenchRecord& r : records) {
        nlohmann::json row = {{"filename", r.filename},
                              {"variables", r.variables},
                              {"clauses", r.clauses},
                              {"result", ToString(r.result)},
                              {"time_s", round2(r.time_s)},
                              {"total_s", round2(r.total_s)}};
        if (r.result == BenchResult::kError) row["message"] = r.message;
        doc.push_back(std::move(row));
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::kTable: {
      std::size_t name_width = std::string_view("Filename").size();
      for (const BenchRecord& r : records) {
        name_width = std::max(name_width, r.filename.size());
      }
      const int w = static_cast<int>(name_width);
      out << std::left << std::setw(w) << "Filename" << "  " << std::right
          << std::setw(8) << "Variable" << "  " << std::setw(8) << "Clause"
          << "  " << std::setw(7) << "Result" << "  " << std::setw(10)
          << "Time(s)" << '\n';
      for (const BenchRecord& r : records) {
        out << std::left << std::setw(w) << r.filename << "  " << std::right
            << std::setw(8) << r.variables << "  " << std::setw(8)
            << r.clauses << "  " << std::setw(7) << ToString(r.result)
            << "  " << std::setw(10) << FormatTime(r.time_s) << '\n';
      }
      break;
    }
  }
}

std::string summary_line(const std::vector<BenchRecord>& records) {
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const BenchRecord& r : records) ++counts[static_cast<int>(r.result)];
  const std::size_t solved = counts[0] + counts[1];
  std::ostringstream s;
  s << "solved " << solved << '/' << records.size() << " (sat " << counts[0]
    << ", unsat " << counts[1] << ", timeout " << counts[2] << ", error "
    << counts[3] << ')';
  return s.str();
}

// --- Subcommands ------------------------------------------------------------

int cmd_convert(const fs::path& input, ExportFormat format,
                const std::optional<fs::path>& output, const RunConfig& config,
                std::ostream& out, std::ostream& err) {
  try {
    const cnf::CnfFormula formula = cnf::read_dimacs_file(input.string());
    const cnf::Normalized norm = cnf::normalize(formula);
    const ilp::IlpModel model = ilp::build_limsat_model(
        norm.formula, {config.form, config.clause_upper_bound});
    const std::string text = format == ExportFormat::kLp
                                 ? ilp::export_lp(model)
                                 : ilp::export_mps(model);
    if (output) {
      std::ofstream file(*output, std::ios::binary);
      if (!file) throw Error(ErrorCode::kIo, "cannot write " + output->string());
      file << text;
      if (!file) throw Error(ErrorCode::kIo, "write failed: " + output->string());
    } else {
      out << text;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_solve(const fs::path& input, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  const SolvedInstance solved = SolveFile(input, config);
  const BenchRecord& r = solved.record;
  if (r.result == BenchResult::kError) {
    err << "error: " << r.message << '\n';
    return kExitError;
  }
  out << "c file " << r.filename << " variables " << r.variables << " clauses "
      << r.clauses << " form " << FormName(config.form) << '\n';
  out << "c time_s " << FormatTime(r.time_s) << " total_s "
      << FormatTime(r.total_s) << '\n';
  switch (r.result) {
    case BenchResult::kSat:
      out << "SAT\n" << solved.witness.ToVLine() << '\n';
      return kExitSat;
    case BenchResult::kUnsat:
      out << "UNSAT\n";
      return kExitUnsat;
    default:
      out << "TIMEOUT\n";
      return kExitTimeout;
  }
}

int cmd_bench(const fs::path& dir, const RunConfig& config,
              const std::optional<fs::path>& output, std::ostream& out,
              std::ostream& err) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    err << "error: " << dir.string() << " is not a directory\n";
    return kExitError;
  }
  files = list_cnf_files(dir);
  if (files.empty()) {
    err << "error: no .cnf files in " << dir.string() << '\n';
    return kExitError;
  }
  const std::vector<BenchRecord> records = run_bench(files, config);

  std::ofstream file;
  std::ostream* sink = &out;
  if (output) {
    file.open(*output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << output->string() << '\n';
      return kExitError;
    }
    sink = &file;
  }
  write_records(*sink, records, config.format);
  // Keep csv/json streams machine-readable; the table gets its footer inline.
  if (config.format == OutputFormat::kTable) {
    *sink << summary_line(records) << '\n';
  } else {
    err << "c " << summary_line(records) << '\n';
  }
  for (const BenchRecord& r : records) {
    if (r.result == BenchResult::kError) {
      err << "c " << r.filename << ": " << r.message << '\n';
    }
  }
  return kExitOk;
}

int cmd_ssp(const fs::path& input, const SspOptions& options, std::ostream& out,
            std::ostream& err) {
  try {
    const cnf::CnfFormula formula = cnf::read_dimacs_file(input.string());
    const cnf::Normalized norm = cnf::normalize(formula);
    if (!norm.report.clean()) {
      err << "c normalized: " << norm.report.duplicates_removed
          << " duplicate literals removed, "
          << norm.report.dropped_tautologies.size()
          << " tautologies dropped\n";
    }
    const ssp::SspInstance inst = ssp::reduce_to_ssp(norm.formula, options.radix);
    out << (options.dump_rows ? ssp::dump_rows(inst) : ssp::render_table(inst));
    if (!options.run_dp) return kExitOk;

    const auto selection = ssp::ssp_dp_solve(inst, options.value_limit);
    if (!selection) {
      out << "no subset\n";
      return kExitUnsat;
    }
    out << "selection:";
    for (const ssp::RowLabel& label : selection->chosen) {
      out << ' ' << label.ToString();
    }
    out << '\n';
    const cnf::Assignment a = ssp::selection_to_assignment(inst, *selection);
    out << "SAT\n" << a.ToVLine() << '\n';
    return kExitSat;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_oracle(const fs::path& input, std::int32_t max_vars, std::ostream& out,
               std::ostream& err) {
  try {
    const cnf::CnfFormula formula = cnf::read_dimacs_file(input.string());
    const cnf::SatVerdict verdict = cnf::brute_force_sat(formula, max_vars);
    out << "c brute force over " << formula.num_vars() << " variables, "
        << FormatTime(verdict.elapsed_s) << " s\n";
    if (verdict.status == cnf::SatStatus::kSat) {
      out << "SAT\n" << verdict.assignment.ToVLine() << '\n';
      return kExitSat;
    }
    out << "UNSAT\n";
    return kExitUnsat;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace limsat::harness
