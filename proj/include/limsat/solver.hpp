#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "limsat/ilp.hpp"

// Feasibility search for 0-1 models with integer <= / >= rows: activity-bound
// propagation plus depth-first branching. No LP relaxation, no learning.
namespace limsat::solver {

enum class Value : std::int8_t { kFree = -1, kZero = 0, kOne = 1 };

// Partial 0/1 fixing of a model's binaries together with each row's minimum
// and maximum achievable activity. Fixings go on a trail so the search can
// undo them in LIFO order.
class SearchState {
 public:
  explicit SearchState(const ilp::IlpModel& model);

  const ilp::IlpModel& model() const { return *model_; }
  std::int32_t num_binaries() const { return model_->num_binaries; }
  Value value(std::int32_t binary) const {
    return values_[static_cast<std::size_t>(binary)];
  }
  std::size_t num_fixed() const { return trail_.size(); }
  bool all_fixed() const {
    return trail_.size() == static_cast<std::size_t>(model_->num_binaries);
  }

  std::int64_t min_activity(std::size_t row) const { return min_act_[row]; }
  std::int64_t max_activity(std::size_t row) const { return max_act_[row]; }
  // Activity with every free binary at 0.
  std::int64_t fixed_activity(std::size_t row) const { return fixed_act_[row]; }

  // Fixes a free binary and queues the rows it appears in. Returns false,
  // changing nothing, if the binary is already fixed to the other value.
  bool fix(std::int32_t binary, bool one);
  // Undoes fixings until num_fixed() == mark.
  void backtrack(std::size_t mark);

  // Rows whose activity bounds changed since the last propagation, FIFO.
  bool has_pending() const { return pending_head_ < pending_.size(); }
  std::uint32_t pop_pending();
  void clear_pending();
  void queue_all_rows();
  std::int64_t max_abs_coef(std::size_t row) const {
    return max_abs_coef_[row];
  }

  // Row is violated when every free binary is set to 0.
  bool unsatisfied_at_zero(std::size_t row) const;
  // The free-at-zero completion of the current fixing.
  ilp::BinarySolution zero_completion() const;

  struct Occurrence {
    std::uint32_t row;
    std::int64_t coef;
  };
  const std::vector<Occurrence>& occurrences(std::int32_t binary) const {
    return columns_[static_cast<std::size_t>(binary)];
  }

 private:
  const ilp::IlpModel* model_;
  std::vector<std::vector<Occurrence>> columns_;
  std::vector<std::int64_t> max_abs_coef_;
  std::vector<Value> values_;
  std::vector<std::int32_t> trail_;
  std::vector<std::int64_t> min_act_;
  std::vector<std::int64_t> max_act_;
  std::vector<std::int64_t> fixed_act_;
  std::vector<std::uint32_t> pending_;
  std::size_t pending_head_ = 0;
  std::vector<std::uint8_t> is_pending_;

  void apply(std::int32_t binary, bool one, int direction);
  void mark_pending(std::uint32_t row);
};

enum class PropagationResult { kFixpoint, kConflict };

// Applies bound implications until nothing changes:
//   <= row: a free binary whose worse value would push min-activity above the
//           rhs is fixed to its other value;
//   >= row: symmetric with max-activity.
// Reports a conflict once a row's bounds exclude the rhs. `fixings`, when
// given, is incremented once per implied fixing.
PropagationResult propagate(SearchState& state,
                            std::uint64_t* fixings = nullptr);

// Free binary that would move the most zero-violated rows toward feasibility
// when set to 1; ties go to the lowest index. For TwoBlock models those rows
// are exactly the uncovered clauses. Throws kNoFreeBinary.
std::int32_t choose_branch(const SearchState& state);

enum class SolveStatus { kFeasible, kInfeasible, kTimedOut };

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;

  friend bool operator==(const SolveStats&, const SolveStats&) = default;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kTimedOut;
  std::optional<ilp::BinarySolution> witness;  // set iff kFeasible
  double elapsed_s = 0.0;
  SolveStats stats;
};

inline constexpr double kNoTimeout = std::numeric_limits<double>::infinity();
inline constexpr std::uint64_t kTimeoutCheckInterval = 1024;

// Deadline is checked every kTimeoutCheckInterval nodes (starting with the
// root) and once more before returning; an answer produced after the
// deadline is reported as kTimedOut.
SolveOutcome solve(const ilp::IlpModel& model, double timeout_s = kNoTimeout);

}  // namespace limsat::solver
