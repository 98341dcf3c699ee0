#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limsat/cnf.hpp"

// Subset-sum encoding of 3SAT. Every number is a digit vector whose first n
// digits are labeled by variables and whose last k digits are labeled by
// clauses. The radix is chosen so that no column can ever carry, which makes
// digit-wise reasoning about subset sums exact.
namespace limsat::ssp {

class DigitVector {
 public:
  DigitVector() = default;
  DigitVector(std::uint32_t radix, std::vector<std::uint32_t> digits);

  std::uint32_t radix() const { return radix_; }
  const std::vector<std::uint32_t>& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  std::uint32_t operator[](std::size_t i) const { return digits_[i]; }

  // Σ digits[i] · radix^(size-1-i); nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> value() const;

  friend bool operator==(const DigitVector&, const DigitVector&) = default;

 private:
  std::uint32_t radix_ = 10;
  std::vector<std::uint32_t> digits_;
};

enum class RowKind : std::uint8_t {
  kVarPositive,  // v_i
  kVarNegative,  // v'_i
  kSlackOne,     // s_j
  kSlackTwo,     // s'_j
};

struct RowLabel {
  RowKind kind = RowKind::kVarPositive;
  std::int32_t index = 1;  // 1-based variable or clause index

  bool is_variable_row() const {
    return kind == RowKind::kVarPositive || kind == RowKind::kVarNegative;
  }
  // "v1", "v'1", "s1", "s'1".
  std::string ToString() const;
  static std::optional<RowLabel> Parse(const std::string& text);

  // Label order: v_1, v'_1, v_2, ..., s_1, s'_1, s_2, ...
  friend std::strong_ordering operator<=>(const RowLabel& a,
                                          const RowLabel& b) {
    const bool av = a.is_variable_row();
    const bool bv = b.is_variable_row();
    if (av != bv) return av ? std::strong_ordering::less
                            : std::strong_ordering::greater;
    if (auto c = a.index <=> b.index; c != 0) return c;
    return a.kind <=> b.kind;
  }
  friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

struct SspRow {
  RowLabel label;
  DigitVector number;
};

struct SspInstance {
  std::uint32_t radix = 10;
  std::int32_t num_vars = 0;
  std::size_t num_clauses = 0;
  std::vector<SspRow> rows;  // in label order
  DigitVector target;

  const SspRow* find(const RowLabel& label) const;
};

struct SubsetSelection {
  std::vector<RowLabel> chosen;  // sorted in label order

  friend bool operator==(const SubsetSelection&,
                         const SubsetSelection&) = default;
};

// Smallest carry-free radix for the formula's clause widths.
std::uint32_t min_radix(const cnf::CnfFormula& formula);
// max(10, max clause width + 4): base 10 whenever it is carry-free.
std::uint32_t default_radix(const cnf::CnfFormula& formula);

// Throws kEmptyClause or kRadixTooSmall.
SspInstance reduce_to_ssp(const cnf::CnfFormula& formula,
                          std::optional<std::uint32_t> radix = std::nullopt);

inline constexpr std::uint64_t kDefaultValueLimit = 100'000'000;

// Throws kTargetTooLarge when the target exceeds value_limit (or 64 bits).
std::optional<SubsetSelection> ssp_dp_solve(
    const SspInstance& instance,
    std::uint64_t value_limit = kDefaultValueLimit);

// Throws kInvalidSelection unless the selection sums to the target digit for
// digit and picks exactly one row of every variable pair.
cnf::Assignment selection_to_assignment(const SspInstance& instance,
                                        const SubsetSelection& selection);

// Grid in the classic layout: rows v1, v'1, ..., s1, s'1, ..., t and columns
// X1..Xn, C1..Ck.
std::string render_table(const SspInstance& instance);

// One line per row and a final target line: "<label> <d_1> ... <d_{n+k}>".
std::string dump_rows(const SspInstance& instance);

}  // namespace limsat::ssp
