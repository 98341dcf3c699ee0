#include "limsat/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "limsat/error.hpp"

namespace limsat::cnf {

Literal Literal::FromDimacs(std::int32_t value) {
  return value < 0 ? Literal{-value, Polarity::kNegative}
                   : Literal{value, Polarity::kPositive};
}

CnfFormula::CnfFormula(std::int32_t num_vars, std::vector<Clause> clauses,
                       std::string source_name)
    : num_vars_(num_vars),
      clauses_(std::move(clauses)),
      source_name_(std::move(source_name)) {
  if (num_vars_ < 0) {
    throw Error(ErrorCode::kVariableOutOfRange, "negative variable count");
  }
  for (std::size_t j = 0; j < clauses_.size(); ++j) {
    for (const Literal& lit : clauses_[j]) {
      if (lit.variable < 1 || lit.variable > num_vars_) {
        throw Error(ErrorCode::kVariableOutOfRange,
                    "variable " + std::to_string(lit.variable) +
                        " in clause " + std::to_string(j + 1) +
                        " outside 1.." + std::to_string(num_vars_));
      }
    }
  }
}

std::size_t CnfFormula::max_clause_width() const {
  std::size_t width = 0;
  for (const Clause& c : clauses_) width = std::max(width, c.size());
  return width;
}

std::size_t CnfFormula::literal_count() const {
  std::size_t count = 0;
  for (const Clause& c : clauses_) count += c.size();
  return count;
}

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.empty(); });
}

TruthValue Assignment::value_of(Literal lit) const {
  const TruthValue v = (*this)[lit.variable];
  if (v == TruthValue::kUnassigned || !lit.negative()) return v;
  return v == TruthValue::kTrue ? TruthValue::kFalse : TruthValue::kTrue;
}

std::string Assignment::ToVLine() const {
  std::string line = "v";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == TruthValue::kUnassigned) continue;
    const auto var = static_cast<std::int64_t>(i + 1);
    line += ' ';
    line += std::to_string(values_[i] == TruthValue::kTrue ? var : -var);
  }
  line += " 0";
  return line;
}

Evaluation evaluate(const CnfFormula& formula, const Assignment& assignment) {
  if (assignment.size() != static_cast<std::size_t>(formula.num_vars())) {
    throw Error(ErrorCode::kLengthMismatch,
                "assignment has " + std::to_string(assignment.size()) +
                    " values, formula has " +
                    std::to_string(formula.num_vars()) + " variables");
  }
  bool undecided = false;
  for (const Clause& clause : formula.clauses()) {
    bool satisfied = false;
    bool open = false;
    for (const Literal& lit : clause) {
      const TruthValue v = assignment.value_of(lit);
      if (v == TruthValue::kTrue) {
        satisfied = true;
        break;
      }
      if (v == TruthValue::kUnassigned) open = true;
    }
    if (satisfied) continue;
    if (!open) return Evaluation::kFalsified;
    undecided = true;
  }
  return undecided ? Evaluation::kUndetermined : Evaluation::kSatisfied;
}

// --- DIMACS -----------------------------------------------------------------

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\f\v");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool ParseInt(std::string_view token, std::int64_t& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && !token.empty();
}

std::string At(std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text, std::string source_name) {
  bool have_header = false;
  std::int64_t declared_vars = 0;
  std::int64_t declared_clauses = 0;
  std::vector<Clause> clauses;
  Clause current;
  bool clause_open = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == 'c') continue;
    // SATLIB files end with a "%" line followed by a stray "0".
    if (line.front() == '%') break;

    if (line.front() == 'p') {
      if (have_header) {
        throw Error(ErrorCode::kMalformedHeader,
                    At(line_no) + "duplicate problem line");
      }
      const auto tokens = SplitWhitespace(line);
      if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf") {
        throw Error(ErrorCode::kMalformedHeader,
                    At(line_no) + "expected 'p cnf <vars> <clauses>'");
      }
      if (!ParseInt(tokens[2], declared_vars) ||
          !ParseInt(tokens[3], declared_clauses)) {
        throw Error(ErrorCode::kNonIntegerToken,
                    At(line_no) + "non-integer count in problem line");
      }
      if (declared_vars < 0 || declared_clauses < 0 ||
          declared_vars > INT32_MAX) {
        throw Error(ErrorCode::kMalformedHeader,
                    At(line_no) + "counts out of range");
      }
      have_header = true;
      continue;
    }

    if (!have_header) {
      throw Error(ErrorCode::kMissingHeader,
                  At(line_no) + "clause data before 'p cnf' line");
    }
    for (std::string_view token : SplitWhitespace(line)) {
      std::int64_t value = 0;
      if (!ParseInt(token, value)) {
        throw Error(ErrorCode::kNonIntegerToken,
                    At(line_no) + "token '" + std::string(token) + "'");
      }
      if (value == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        clause_open = false;
        continue;
      }
      const std::int64_t var = value < 0 ? -value : value;
      if (var > declared_vars) {
        throw Error(ErrorCode::kVariableOutOfRange,
                    At(line_no) + "literal " + std::to_string(value) +
                        " exceeds declared " + std::to_string(declared_vars) +
                        " variables");
      }
      current.push_back(Literal::FromDimacs(static_cast<std::int32_t>(value)));
      clause_open = true;
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::kMissingHeader, "no 'p cnf' line");
  }
  // A final clause missing its terminating 0 is accepted.
  if (clause_open) clauses.push_back(std::move(current));
  if (static_cast<std::int64_t>(clauses.size()) != declared_clauses) {
    throw Error(ErrorCode::kClauseCountMismatch,
                "header declares " + std::to_string(declared_clauses) +
                    " clauses, found " + std::to_string(clauses.size()));
  }
  return CnfFormula(static_cast<std::int32_t>(declared_vars),
                    std::move(clauses), std::move(source_name));
}

CnfFormula parse_dimacs(std::istream& in, std::string source_name) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return parse_dimacs(std::string_view(text), std::move(source_name));
}

CnfFormula read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return parse_dimacs(in, path);
}

std::string write_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses()
      << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& lit : clause) out << lit.ToDimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

// --- Normalization ----------------------------------------------------------

Normalized normalize(const CnfFormula& formula) {
  Normalized result;
  NormalizeReport& report = result.report;
  std::vector<Clause> kept;
  kept.reserve(formula.num_clauses());

  for (std::size_t j = 0; j < formula.num_clauses(); ++j) {
    const Clause& clause = formula.clause(j);
    Clause simplified;
    simplified.reserve(clause.size());
    bool tautology = false;
    for (const Literal& lit : clause) {
      if (std::find(simplified.begin(), simplified.end(), lit) !=
          simplified.end()) {
        continue;
      }
      if (std::find(simplified.begin(), simplified.end(), ~lit) !=
          simplified.end()) {
        tautology = true;
      }
      simplified.push_back(lit);
    }
    if (tautology) {
      report.dropped_tautologies.push_back(j);
      continue;
    }
    if (simplified.size() != clause.size()) {
      report.duplicates_removed += clause.size() - simplified.size();
      report.shrunk_clauses.push_back(j);
    }
    if (simplified.empty()) report.has_empty_clause = true;
    kept.push_back(std::move(simplified));
  }
  result.formula =
      CnfFormula(formula.num_vars(), std::move(kept), formula.source_name());
  return result;
}

// --- Enumeration oracle -----------------------------------------------------

SatVerdict brute_force_sat(const CnfFormula& formula, std::int32_t max_vars) {
  const auto start = std::chrono::steady_clock::now();
  if (formula.num_vars() > max_vars) {
    throw Error(ErrorCode::kTooManyVariables,
                std::to_string(formula.num_vars()) + " variables exceed limit " +
                    std::to_string(max_vars));
  }

  std::set<std::int32_t> occurring_set;
  for (const Clause& c : formula.clauses()) {
    for (const Literal& lit : c) occurring_set.insert(lit.variable);
  }
  const std::vector<std::int32_t> occurring(occurring_set.begin(),
                                            occurring_set.end());
  const std::size_t m = occurring.size();
  if (m >= 63) {
    throw Error(ErrorCode::kTooManyVariables,
                "enumeration needs fewer than 63 occurring variables");
  }

  // Bit (m-1-p) of the counter holds occurring[p], so counting upward walks
  // assignments in lexicographic order with x1 first.
  std::vector<std::uint32_t> bit_of(
      static_cast<std::size_t>(formula.num_vars()) + 1, 0);
  for (std::size_t p = 0; p < m; ++p) {
    bit_of[static_cast<std::size_t>(occurring[p])] =
        static_cast<std::uint32_t>(m - 1 - p);
  }
  struct Masks {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
  };
  std::vector<Masks> masks;
  masks.reserve(formula.num_clauses());
  for (const Clause& c : formula.clauses()) {
    Masks mk;
    for (const Literal& lit : c) {
      const std::uint64_t bit = std::uint64_t{1}
                                << bit_of[static_cast<std::size_t>(lit.variable)];
      (lit.negative() ? mk.neg : mk.pos) |= bit;
    }
    masks.push_back(mk);
  }

  SatVerdict verdict;
  verdict.status = SatStatus::kUnsat;
  const std::uint64_t end = std::uint64_t{1} << m;
  for (std::uint64_t counter = 0; counter < end; ++counter) {
    const bool ok = std::all_of(masks.begin(), masks.end(), [&](const Masks& mk) {
      return ((counter & mk.pos) | (~counter & mk.neg)) != 0;
    });
    if (!ok) continue;
    Assignment a(static_cast<std::size_t>(formula.num_vars()));
    for (std::size_t p = 0; p < m; ++p) {
      a.set(occurring[p], ((counter >> (m - 1 - p)) & 1U) != 0);
    }
    verdict.status = SatStatus::kSat;
    verdict.assignment = std::move(a);
    break;
  }
  verdict.elapsed_s = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return verdict;
}

}  // namespace limsat::cnf
