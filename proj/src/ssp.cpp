#include "limsat/ssp.hpp"

#include <algorithm>
#include <iomanip>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include "limsat/error.hpp"

namespace limsat::ssp {

DigitVector::DigitVector(std::uint32_t radix, std::vector<std::uint32_t> digits)
    : radix_(radix), digits_(std::move(digits)) {
  if (radix_ < 2) throw Error(ErrorCode::kRadixTooSmall, "radix must be >= 2");
  for (std::uint32_t d : digits_) {
    if (d >= radix_) {
      throw Error(ErrorCode::kRadixTooSmall,
                  "digit " + std::to_string(d) + " does not fit radix " +
                      std::to_string(radix_));
    }
  }
}

std::optional<std::uint64_t> DigitVector::value() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v = 0;
  for (std::uint32_t d : digits_) {
    if (v > (kMax - d) / radix_) return std::nullopt;
    v = v * radix_ + d;
  }
  return v;
}

std::string RowLabel::ToString() const {
  switch (kind) {
    case RowKind::kVarPositive: return "v" + std::to_string(index);
    case RowKind::kVarNegative: return "v'" + std::to_string(index);
    case RowKind::kSlackOne: return "s" + std::to_string(index);
    case RowKind::kSlackTwo: return "s'" + std::to_string(index);
  }
  return {};
}

std::optional<RowLabel> RowLabel::Parse(const std::string& text) {
  if (text.size() < 2) return std::nullopt;
  RowLabel label;
  std::size_t pos = 1;
  const bool primed = text[1] == '\'';
  if (primed) pos = 2;
  if (text[0] == 'v') {
    label.kind = primed ? RowKind::kVarNegative : RowKind::kVarPositive;
  } else if (text[0] == 's') {
    label.kind = primed ? RowKind::kSlackTwo : RowKind::kSlackOne;
  } else {
    return std::nullopt;
  }
  const std::string digits = text.substr(pos);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; }) ||
      digits.size() > 9) {
    return std::nullopt;
  }
  label.index = std::stoi(digits);
  if (label.index < 1) return std::nullopt;
  return label;
}

const SspRow* SspInstance::find(const RowLabel& label) const {
  auto it = std::lower_bound(
      rows.begin(), rows.end(), label,
      [](const SspRow& row, const RowLabel& l) { return row.label < l; });
  return it != rows.end() && it->label == label ? &*it : nullptr;
}

std::uint32_t min_radix(const cnf::CnfFormula& formula) {
  // A clause column collects at most one 1 per literal row plus 1 + 2 from
  // its slack pair; a variable column at most 1 + 1.
  if (formula.num_clauses() == 0) return 3;
  return static_cast<std::uint32_t>(formula.max_clause_width()) + 4;
}

std::uint32_t default_radix(const cnf::CnfFormula& formula) {
  return std::max<std::uint32_t>(10, min_radix(formula));
}

SspInstance reduce_to_ssp(const cnf::CnfFormula& formula,
                          std::optional<std::uint32_t> radix) {
  if (formula.has_empty_clause()) {
    throw Error(ErrorCode::kEmptyClause,
                "formula contains an empty clause and is trivially UNSAT");
  }
  const std::uint32_t base = radix.value_or(default_radix(formula));
  if (base < min_radix(formula)) {
    throw Error(ErrorCode::kRadixTooSmall,
                "radix " + std::to_string(base) + " can carry; need at least " +
                    std::to_string(min_radix(formula)));
  }

  const auto n = static_cast<std::size_t>(formula.num_vars());
  const std::size_t k = formula.num_clauses();
  SspInstance inst;
  inst.radix = base;
  inst.num_vars = formula.num_vars();
  inst.num_clauses = k;
  inst.rows.reserve(2 * n + 2 * k);

  for (std::size_t i = 0; i < n; ++i) {
    const auto var = static_cast<std::int32_t>(i + 1);
    std::vector<std::uint32_t> pos(n + k, 0);
    std::vector<std::uint32_t> neg(n + k, 0);
    pos[i] = neg[i] = 1;
    for (std::size_t j = 0; j < k; ++j) {
      for (const cnf::Literal& lit : formula.clause(j)) {
        if (lit.variable != var) continue;
        (lit.negative() ? neg : pos)[n + j] = 1;
      }
    }
    inst.rows.push_back({{RowKind::kVarPositive, var}, {base, std::move(pos)}});
    inst.rows.push_back({{RowKind::kVarNegative, var}, {base, std::move(neg)}});
  }
  for (std::size_t j = 0; j < k; ++j) {
    const auto clause = static_cast<std::int32_t>(j + 1);
    std::vector<std::uint32_t> one(n + k, 0);
    std::vector<std::uint32_t> two(n + k, 0);
    one[n + j] = 1;
    two[n + j] = 2;
    inst.rows.push_back({{RowKind::kSlackOne, clause}, {base, std::move(one)}});
    inst.rows.push_back({{RowKind::kSlackTwo, clause}, {base, std::move(two)}});
  }

  std::vector<std::uint32_t> target(n + k, 4);
  std::fill(target.begin(), target.begin() + static_cast<std::ptrdiff_t>(n), 1);
  inst.target = DigitVector(base, std::move(target));
  return inst;
}

std::optional<SubsetSelection> ssp_dp_solve(const SspInstance& instance,
                                            std::uint64_t value_limit) {
  const auto target = instance.target.value();
  if (!target || *target > value_limit) {
    throw Error(ErrorCode::kTargetTooLarge,
                "target " +
                    (target ? std::to_string(*target)
                            : std::string("(over 64 bits)")) +
                    " exceeds value limit " + std::to_string(value_limit));
  }

  const std::uint64_t radix = instance.radix;
  const auto& target_digits = instance.target.digits();
  // No column ever carries, so a partial sum can reach the target only if
  // each of its digits is at most the target digit.
  auto below_target = [&](std::uint64_t sum) {
    for (auto it = target_digits.rbegin(); it != target_digits.rend(); ++it) {
      if (sum % radix > *it) return false;
      sum /= radix;
    }
    return true;
  };

  const std::size_t m = instance.rows.size();
  std::vector<std::uint64_t> row_value(m);
  for (std::size_t r = 0; r < m; ++r) {
    row_value[r] = instance.rows[r].number.value().value_or(0);
  }

  // reachable[r]: sums attainable with rows r..m-1, sorted and unique.
  std::vector<std::vector<std::uint64_t>> reachable(m + 1);
  reachable[m] = {0};
  for (std::size_t r = m; r-- > 0;) {
    const auto& later = reachable[r + 1];
    std::vector<std::uint64_t> shifted;
    shifted.reserve(later.size());
    for (std::uint64_t s : later) {
      const std::uint64_t t = s + row_value[r];
      if (t <= *target && below_target(t)) shifted.push_back(t);
    }
    auto& here = reachable[r];
    here.reserve(later.size() + shifted.size());
    std::set_union(later.begin(), later.end(), shifted.begin(), shifted.end(),
                   std::back_inserter(here));
  }

  auto contains = [](const std::vector<std::uint64_t>& v, std::uint64_t x) {
    return std::binary_search(v.begin(), v.end(), x);
  };
  if (!contains(reachable[0], *target)) return std::nullopt;

  // Walk rows in label order, skipping whenever the rest can still finish.
  SubsetSelection selection;
  std::uint64_t remaining = *target;
  for (std::size_t r = 0; r < m; ++r) {
    if (contains(reachable[r + 1], remaining)) continue;
    selection.chosen.push_back(instance.rows[r].label);
    remaining -= row_value[r];
  }
  return selection;
}

cnf::Assignment selection_to_assignment(const SspInstance& instance,
                                        const SubsetSelection& selection) {
  const std::size_t width = instance.target.size();
  std::vector<std::uint64_t> column(width, 0);
  std::set<RowLabel> seen;
  for (const RowLabel& label : selection.chosen) {
    const SspRow* row = instance.find(label);
    if (row == nullptr) {
      throw Error(ErrorCode::kInvalidSelection,
                  "unknown row " + label.ToString());
    }
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::kInvalidSelection,
                  "row " + label.ToString() + " chosen twice");
    }
    for (std::size_t i = 0; i < width; ++i) column[i] += row->number[i];
  }
  for (std::size_t i = 0; i < width; ++i) {
    if (column[i] != instance.target[i]) {
      throw Error(ErrorCode::kInvalidSelection,
                  "column " + std::to_string(i + 1) + " sums to " +
                      std::to_string(column[i]) + ", target digit is " +
                      std::to_string(instance.target[i]));
    }
  }

  cnf::Assignment assignment(static_cast<std::size_t>(instance.num_vars));
  for (std::int32_t var = 1; var <= instance.num_vars; ++var) {
    const bool pos = seen.contains({RowKind::kVarPositive, var});
    const bool neg = seen.contains({RowKind::kVarNegative, var});
    // The variable column check above already enforces exactly one.
    assignment.set(var, pos && !neg);
  }
  return assignment;
}

std::string render_table(const SspInstance& instance) {
  const auto n = static_cast<std::size_t>(instance.num_vars);
  const std::size_t width = n + instance.num_clauses;

  std::vector<std::string> header(width);
  for (std::size_t i = 0; i < width; ++i) {
    header[i] = i < n ? "X" + std::to_string(i + 1)
                      : "C" + std::to_string(i - n + 1);
  }
  std::vector<std::size_t> cell(width);
  for (std::size_t i = 0; i < width; ++i) {
    cell[i] = std::max(header[i].size(),
                       std::to_string(instance.radix - 1).size());
  }
  std::size_t label_width = 1;
  for (const SspRow& row : instance.rows) {
    label_width = std::max(label_width, row.label.ToString().size());
  }

  std::ostringstream out;
  auto emit = [&](const std::string& label, auto&& text_of) {
    out << std::left << std::setw(static_cast<int>(label_width)) << label;
    for (std::size_t i = 0; i < width; ++i) {
      out << ' ' << std::right << std::setw(static_cast<int>(cell[i]))
          << text_of(i);
    }
    out << '\n';
  };
  emit("", [&](std::size_t i) { return header[i]; });
  for (const SspRow& row : instance.rows) {
    emit(row.label.ToString(),
         [&](std::size_t i) { return std::to_string(row.number[i]); });
  }
  emit("t", [&](std::size_t i) { return std::to_string(instance.target[i]); });
  return out.str();
}

std::string dump_rows(const SspInstance& instance) {
  std::ostringstream out;
  auto line = [&](const std::string& label, const DigitVector& v) {
    out << label;
    for (std::uint32_t d : v.digits()) out << ' ' << d;
    out << '\n';
  };
  for (const SspRow& row : instance.rows) line(row.label.ToString(), row.number);
  line("t", instance.target);
  return out.str();
}

}  // namespace limsat::ssp
