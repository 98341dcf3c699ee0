#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "limsat/cnf.hpp"

namespace limsat::ilp {

struct Triplet {
  std::int32_t row = 0;
  std::int32_t col = 0;
  std::int64_t value = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

// Integer sparse matrix stored as (row, col, value) triplets sorted by
// (row, col) with no duplicate positions and no explicit zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  // Sorts the triplets; throws kDimensionMismatch on out-of-range indices or
  // repeated positions.
  SparseMatrix(std::int32_t rows, std::int32_t cols,
               std::vector<Triplet> entries);

  std::int32_t rows() const { return rows_; }
  std::int32_t cols() const { return cols_; }
  const std::vector<Triplet>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  std::int64_t at(std::int32_t row, std::int32_t col) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::int32_t rows_ = 0;
  std::int32_t cols_ = 0;
  std::vector<Triplet> entries_;
};

// Literal-row incidence of a formula. Row 2i-2 is the positive literal of x_i
// and row 2i-1 the negative one.
struct LimsatMatrices {
  SparseMatrix var_block;     // 2n x n: both literal rows of x_i hit column i
  SparseMatrix clause_block;  // 2n x k: literal row hits C_j iff it occurs in C_j
};

// Throws kEmptyClause.
LimsatMatrices build_matrices(const cnf::CnfFormula& formula);

enum class ModelForm { kTwoBlock, kCombined };
enum class Sense : std::uint8_t { kLessEqual, kGreaterEqual };

struct Term {
  std::int32_t binary = 0;
  std::int64_t coef = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // sorted by binary, nonzero coefficients
  Sense sense = Sense::kLessEqual;
  std::int64_t rhs = 0;

  std::int64_t activity(const std::vector<std::uint8_t>& values) const;
  bool satisfied_by(const std::vector<std::uint8_t>& values) const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct IlpModel {
  std::int32_t num_binaries = 0;
  std::vector<Constraint> constraints;
  std::vector<std::int64_t> objective;  // minimized; length num_binaries

  bool feasible(const std::vector<std::uint8_t>& values) const;

  friend bool operator==(const IlpModel&, const IlpModel&) = default;
};

struct ModelOptions {
  ModelForm form = ModelForm::kTwoBlock;
  // Adds the clause upper bounds xA2 <= width as extra "cu_j" rows. Off by
  // default: the lower cover bounds alone decide satisfiability.
  bool clause_upper_bound = false;
};

// TwoBlock: var_i: p_i + q_i <= 1 and cl_j: (cover of C_j) >= 1.
// Combined: the same rows with every cl_j negated into a <= -1 row.
// Objective is all ones. Throws kDimensionMismatch when the blocks disagree.
IlpModel build_limsat_model(const SparseMatrix& var_block,
                            const SparseMatrix& clause_block,
                            const ModelOptions& options = {});

inline IlpModel build_limsat_model(const cnf::CnfFormula& formula,
                                   const ModelOptions& options = {}) {
  const LimsatMatrices m = build_matrices(formula);
  return build_limsat_model(m.var_block, m.clause_block, options);
}

// p_i for even indices, q_i for odd ones.
std::string binary_name(std::int32_t binary);
// Inverse of binary_name; -1 when the name is not of that shape.
std::int32_t binary_index(std::string_view name);

struct BinarySolution {
  std::vector<std::uint8_t> values;  // 0/1, length num_binaries

  friend bool operator==(const BinarySolution&, const BinarySolution&) = default;
};

// x_i is True when p_i = 1, False when q_i = 1, and False when both are 0.
// Throws kInfeasibleWitness if the solution violates the model, or
// kDimensionMismatch if the sizes disagree.
cnf::Assignment solution_to_assignment(const IlpModel& model,
                                       const BinarySolution& solution,
                                       const cnf::CnfFormula& formula);

// --- Exchange formats -------------------------------------------------------

std::string export_lp(const IlpModel& model);
std::string export_mps(const IlpModel& model);
// Reads the output of export_lp back; throws kParseError on anything else.
IlpModel import_lp(std::string_view text);

}  // namespace limsat::ilp
