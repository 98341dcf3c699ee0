#include "limsat/ilp.hpp"

#include <algorithm>
#include <charconv>

#include "limsat/error.hpp"

namespace limsat::ilp {

SparseMatrix::SparseMatrix(std::int32_t rows, std::int32_t cols,
                           std::vector<Triplet> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ < 0 || cols_ < 0) {
    throw Error(ErrorCode::kDimensionMismatch, "negative matrix dimension");
  }
  std::erase_if(entries_, [](const Triplet& t) { return t.value == 0; });
  std::sort(entries_.begin(), entries_.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const Triplet& t = entries_[e];
    if (t.row < 0 || t.row >= rows_ || t.col < 0 || t.col >= cols_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "entry (" + std::to_string(t.row) + ", " +
                      std::to_string(t.col) + ") outside " +
                      std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (e > 0 && entries_[e - 1].row == t.row && entries_[e - 1].col == t.col) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "duplicate entry (" + std::to_string(t.row) + ", " +
                      std::to_string(t.col) + ")");
    }
  }
}

std::int64_t SparseMatrix::at(std::int32_t row, std::int32_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Triplet{row, col, 0},
                             [](const Triplet& a, const Triplet& b) {
                               return a.row != b.row ? a.row < b.row
                                                     : a.col < b.col;
                             });
  return it != entries_.end() && it->row == row && it->col == col ? it->value
                                                                  : 0;
}

LimsatMatrices build_matrices(const cnf::CnfFormula& formula) {
  if (formula.has_empty_clause()) {
    throw Error(ErrorCode::kEmptyClause,
                "formula contains an empty clause and is trivially UNSAT");
  }
  const std::int32_t n = formula.num_vars();
  const auto k = static_cast<std::int32_t>(formula.num_clauses());

  std::vector<Triplet> var_entries;
  var_entries.reserve(static_cast<std::size_t>(2 * n));
  for (std::int32_t i = 0; i < n; ++i) {
    var_entries.push_back({2 * i, i, 1});
    var_entries.push_back({2 * i + 1, i, 1});
  }

  std::vector<Triplet> clause_entries;
  clause_entries.reserve(formula.literal_count());
  for (std::int32_t j = 0; j < k; ++j) {
    for (const cnf::Literal& lit : formula.clause(static_cast<std::size_t>(j))) {
      const std::int32_t row = 2 * (lit.variable - 1) + (lit.negative() ? 1 : 0);
      clause_entries.push_back({row, j, 1});
    }
  }
  // An unnormalized clause may repeat a literal; the incidence stays 0/1.
  std::sort(clause_entries.begin(), clause_entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  clause_entries.erase(
      std::unique(clause_entries.begin(), clause_entries.end()),
      clause_entries.end());

  return {SparseMatrix(2 * n, n, std::move(var_entries)),
          SparseMatrix(2 * n, k, std::move(clause_entries))};
}

namespace {

std::vector<std::vector<Term>> ColumnsAsTerms(const SparseMatrix& m) {
  std::vector<std::vector<Term>> columns(static_cast<std::size_t>(m.cols()));
  // Row-major traversal keeps each column's terms sorted by binary.
  for (const Triplet& t : m.entries()) {
    columns[static_cast<std::size_t>(t.col)].push_back({t.row, t.value});
  }
  return columns;
}

}  // namespace

IlpModel build_limsat_model(const SparseMatrix& var_block,
                            const SparseMatrix& clause_block,
                            const ModelOptions& options) {
  if (var_block.rows() != clause_block.rows() ||
      var_block.rows() != 2 * var_block.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "blocks are " + std::to_string(var_block.rows()) + "x" +
                    std::to_string(var_block.cols()) + " and " +
                    std::to_string(clause_block.rows()) + "x" +
                    std::to_string(clause_block.cols()) +
                    "; expected 2n x n and 2n x k");
  }

  IlpModel model;
  model.num_binaries = var_block.rows();
  model.objective.assign(static_cast<std::size_t>(model.num_binaries), 1);

  const auto var_columns = ColumnsAsTerms(var_block);
  for (std::size_t i = 0; i < var_columns.size(); ++i) {
    model.constraints.push_back({"var_" + std::to_string(i + 1),
                                 var_columns[i], Sense::kLessEqual, 1});
  }

  const auto clause_columns = ColumnsAsTerms(clause_block);
  for (std::size_t j = 0; j < clause_columns.size(); ++j) {
    Constraint cover{"cl_" + std::to_string(j + 1), clause_columns[j],
                     Sense::kGreaterEqual, 1};
    if (options.form == ModelForm::kCombined) {
      for (Term& t : cover.terms) t.coef = -t.coef;
      cover.sense = Sense::kLessEqual;
      cover.rhs = -1;
    }
    model.constraints.push_back(std::move(cover));
  }

  if (options.clause_upper_bound) {
    for (std::size_t j = 0; j < clause_columns.size(); ++j) {
      std::int64_t width = 0;
      for (const Term& t : clause_columns[j]) width += t.coef;
      model.constraints.push_back({"cu_" + std::to_string(j + 1),
                                   clause_columns[j], Sense::kLessEqual,
                                   width});
    }
  }
  return model;
}

std::int64_t Constraint::activity(const std::vector<std::uint8_t>& values) const {
  std::int64_t sum = 0;
  for (const Term& t : terms) {
    if (values[static_cast<std::size_t>(t.binary)] != 0) sum += t.coef;
  }
  return sum;
}

bool Constraint::satisfied_by(const std::vector<std::uint8_t>& values) const {
  const std::int64_t a = activity(values);
  return sense == Sense::kLessEqual ? a <= rhs : a >= rhs;
}

bool IlpModel::feasible(const std::vector<std::uint8_t>& values) const {
  if (values.size() != static_cast<std::size_t>(num_binaries)) return false;
  if (std::any_of(values.begin(), values.end(),
                  [](std::uint8_t v) { return v > 1; })) {
    return false;
  }
  return std::all_of(
      constraints.begin(), constraints.end(),
      [&](const Constraint& c) { return c.satisfied_by(values); });
}

std::string binary_name(std::int32_t binary) {
  return (binary % 2 == 0 ? "p_" : "q_") + std::to_string(binary / 2 + 1);
}

std::int32_t binary_index(std::string_view name) {
  if (name.size() < 3 || name[1] != '_' || (name[0] != 'p' && name[0] != 'q')) {
    return -1;
  }
  std::int32_t var = 0;
  const char* end = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(name.data() + 2, end, var);
  if (ec != std::errc() || ptr != end || var < 1) return -1;
  return 2 * (var - 1) + (name[0] == 'q' ? 1 : 0);
}

cnf::Assignment solution_to_assignment(const IlpModel& model,
                                       const BinarySolution& solution,
                                       const cnf::CnfFormula& formula) {
  const auto n = static_cast<std::size_t>(formula.num_vars());
  if (static_cast<std::size_t>(model.num_binaries) != 2 * n ||
      solution.values.size() != 2 * n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model, solution and formula sizes disagree");
  }
  for (const Constraint& c : model.constraints) {
    if (!c.satisfied_by(solution.values)) {
      throw Error(ErrorCode::kInfeasibleWitness,
                  "solution violates constraint " + c.name);
    }
  }
  cnf::Assignment assignment(n);
  for (std::size_t i = 0; i < n; ++i) {
    assignment.set(static_cast<std::int32_t>(i + 1),
                   solution.values[2 * i] != 0);
  }
  return assignment;
}

}  // namespace limsat::ilp
