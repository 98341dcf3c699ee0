#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace limsat::cnf {

enum class Polarity : std::uint8_t { kPositive, kNegative };

struct Literal {
  std::int32_t variable = 0;  // 1-based
  Polarity polarity = Polarity::kPositive;

  static Literal FromDimacs(std::int32_t value);
  std::int32_t ToDimacs() const {
    return polarity == Polarity::kPositive ? variable : -variable;
  }
  bool negative() const { return polarity == Polarity::kNegative; }
  Literal operator~() const {
    return {variable, negative() ? Polarity::kPositive : Polarity::kNegative};
  }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

// A formula over variables 1..num_vars. Construction checks that every
// literal refers to a declared variable; the object is immutable afterwards.
class CnfFormula {
 public:
  CnfFormula() = default;
  CnfFormula(std::int32_t num_vars, std::vector<Clause> clauses,
             std::string source_name = {});

  std::int32_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t j) const { return clauses_[j]; }
  const std::string& source_name() const { return source_name_; }

  std::size_t max_clause_width() const;
  std::size_t literal_count() const;
  bool has_empty_clause() const;

  // Equality ignores source_name.
  friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.num_vars_ == b.num_vars_ && a.clauses_ == b.clauses_;
  }

 private:
  std::int32_t num_vars_ = 0;
  std::vector<Clause> clauses_;
  std::string source_name_;
};

enum class TruthValue : std::uint8_t { kUnassigned, kFalse, kTrue };

// Ternary valuation of variables 1..size().
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars)
      : values_(num_vars, TruthValue::kUnassigned) {}

  std::size_t size() const { return values_.size(); }
  TruthValue operator[](std::int32_t variable) const {
    return values_[static_cast<std::size_t>(variable - 1)];
  }
  void set(std::int32_t variable, TruthValue value) {
    values_[static_cast<std::size_t>(variable - 1)] = value;
  }
  void set(std::int32_t variable, bool value) {
    set(variable, value ? TruthValue::kTrue : TruthValue::kFalse);
  }
  TruthValue value_of(Literal lit) const;

  // DIMACS "v" line: assigned variables as signed integers, terminated by 0.
  std::string ToVLine() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<TruthValue> values_;
};

enum class Evaluation { kSatisfied, kFalsified, kUndetermined };

Evaluation evaluate(const CnfFormula& formula, const Assignment& assignment);

enum class SatStatus { kSat, kUnsat, kUnknown };

struct SatVerdict {
  SatStatus status = SatStatus::kUnknown;
  Assignment assignment;  // meaningful only for kSat
  double elapsed_s = 0.0;
};

// --- DIMACS -----------------------------------------------------------------

CnfFormula parse_dimacs(std::istream& in, std::string source_name = {});
CnfFormula parse_dimacs(std::string_view text, std::string source_name = {});
CnfFormula read_dimacs_file(const std::string& path);

// Canonical form: header line then one clause per line.
std::string write_dimacs(const CnfFormula& formula);

// --- Normalization ----------------------------------------------------------

struct NormalizeReport {
  std::size_t duplicates_removed = 0;
  std::vector<std::size_t> shrunk_clauses;       // original clause indices
  std::vector<std::size_t> dropped_tautologies;  // original clause indices
  bool has_empty_clause = false;

  bool clean() const {
    return duplicates_removed == 0 && dropped_tautologies.empty() &&
           !has_empty_clause;
  }
};

struct Normalized {
  CnfFormula formula;
  NormalizeReport report;
};

// Removes repeated literals (keeping first occurrences in order) and drops
// clauses containing a complementary pair. Empty clauses are kept and flagged.
Normalized normalize(const CnfFormula& formula);

// --- Enumeration oracle -----------------------------------------------------

inline constexpr std::int32_t kDefaultMaxVars = 25;

// Enumerates assignments of the variables that occur in some clause, x1 most
// significant, False before True. Variables occurring nowhere stay Unassigned.
SatVerdict brute_force_sat(const CnfFormula& formula,
                           std::int32_t max_vars = kDefaultMaxVars);

}  // namespace limsat::cnf
