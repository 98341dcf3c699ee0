#include "limsat/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>

#include "limsat/error.hpp"

namespace limsat::solver {

using ilp::Sense;

SearchState::SearchState(const ilp::IlpModel& model)
    : model_(&model),
      columns_(static_cast<std::size_t>(model.num_binaries)),
      max_abs_coef_(model.constraints.size(), 0),
      values_(static_cast<std::size_t>(model.num_binaries), Value::kFree),
      min_act_(model.constraints.size(), 0),
      max_act_(model.constraints.size(), 0),
      fixed_act_(model.constraints.size(), 0),
      is_pending_(model.constraints.size(), 0) {
  trail_.reserve(static_cast<std::size_t>(model.num_binaries));
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    for (const ilp::Term& t : model.constraints[r].terms) {
      columns_[static_cast<std::size_t>(t.binary)].push_back(
          {static_cast<std::uint32_t>(r), t.coef});
      max_abs_coef_[r] = std::max(max_abs_coef_[r], std::abs(t.coef));
      (t.coef < 0 ? min_act_[r] : max_act_[r]) += t.coef;
    }
  }
  queue_all_rows();
}

void SearchState::mark_pending(std::uint32_t row) {
  if (is_pending_[row] != 0) return;
  is_pending_[row] = 1;
  pending_.push_back(row);
}

std::uint32_t SearchState::pop_pending() {
  const std::uint32_t row = pending_[pending_head_++];
  is_pending_[row] = 0;
  if (pending_head_ == pending_.size()) clear_pending();
  return row;
}

void SearchState::clear_pending() {
  for (std::size_t i = pending_head_; i < pending_.size(); ++i) {
    is_pending_[pending_[i]] = 0;
  }
  pending_.clear();
  pending_head_ = 0;
}

void SearchState::queue_all_rows() {
  for (std::size_t r = 0; r < model_->constraints.size(); ++r) {
    mark_pending(static_cast<std::uint32_t>(r));
  }
}

// direction +1 fixes the binary, -1 releases it again.
void SearchState::apply(std::int32_t binary, bool one, int direction) {
  for (const Occurrence& occ : columns_[static_cast<std::size_t>(binary)]) {
    const std::int64_t c = occ.coef;
    // A free binary contributes [min(c, 0), max(c, 0)] to the row.
    const std::int64_t lo = one ? c - std::min<std::int64_t>(c, 0)
                                : -std::min<std::int64_t>(c, 0);
    const std::int64_t hi = one ? c - std::max<std::int64_t>(c, 0)
                                : -std::max<std::int64_t>(c, 0);
    min_act_[occ.row] += direction * lo;
    max_act_[occ.row] += direction * hi;
    if (one) fixed_act_[occ.row] += direction * c;
    if (direction > 0) mark_pending(occ.row);
  }
}

bool SearchState::fix(std::int32_t binary, bool one) {
  Value& v = values_[static_cast<std::size_t>(binary)];
  const Value wanted = one ? Value::kOne : Value::kZero;
  if (v != Value::kFree) return v == wanted;
  v = wanted;
  trail_.push_back(binary);
  apply(binary, one, +1);
  return true;
}

void SearchState::backtrack(std::size_t mark) {
  while (trail_.size() > mark) {
    const std::int32_t binary = trail_.back();
    trail_.pop_back();
    Value& v = values_[static_cast<std::size_t>(binary)];
    apply(binary, v == Value::kOne, -1);
    v = Value::kFree;
  }
}

bool SearchState::unsatisfied_at_zero(std::size_t row) const {
  const ilp::Constraint& c = model_->constraints[row];
  return c.sense == Sense::kLessEqual ? fixed_act_[row] > c.rhs
                                      : fixed_act_[row] < c.rhs;
}

ilp::BinarySolution SearchState::zero_completion() const {
  ilp::BinarySolution x;
  x.values.reserve(values_.size());
  for (Value v : values_) x.values.push_back(v == Value::kOne ? 1 : 0);
  return x;
}

PropagationResult propagate(SearchState& state, std::uint64_t* fixings) {
  const auto& constraints = state.model().constraints;
  while (state.has_pending()) {
    const std::uint32_t r = state.pop_pending();
    const ilp::Constraint& row = constraints[r];
    const bool le = row.sense == Sense::kLessEqual;
    // Distance between the bound that can still be violated and the rhs.
    const std::int64_t slack = le ? row.rhs - state.min_activity(r)
                                  : state.max_activity(r) - row.rhs;
    if (slack < 0) {
      state.clear_pending();
      return PropagationResult::kConflict;
    }
    if (state.max_abs_coef(r) <= slack) continue;
    for (const ilp::Term& t : row.terms) {
      if (state.value(t.binary) != Value::kFree) continue;
      if (std::abs(t.coef) <= slack) continue;
      // <= rows forbid whichever value raises min-activity past the rhs;
      // >= rows forbid whichever value drops max-activity below it.
      const bool one = le ? t.coef < 0 : t.coef > 0;
      state.fix(t.binary, one);
      if (fixings != nullptr) ++*fixings;
    }
  }
  return PropagationResult::kFixpoint;
}

std::int32_t choose_branch(const SearchState& state) {
  const auto& constraints = state.model().constraints;
  std::vector<std::uint32_t> score(static_cast<std::size_t>(state.num_binaries()),
                                   0);
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    if (!state.unsatisfied_at_zero(r)) continue;
    const bool le = constraints[r].sense == Sense::kLessEqual;
    for (const ilp::Term& t : constraints[r].terms) {
      if (state.value(t.binary) != Value::kFree) continue;
      if (le ? t.coef < 0 : t.coef > 0) ++score[static_cast<std::size_t>(t.binary)];
    }
  }
  std::int32_t best = -1;
  for (std::int32_t b = 0; b < state.num_binaries(); ++b) {
    if (state.value(b) != Value::kFree) continue;
    if (best < 0 || score[static_cast<std::size_t>(b)] >
                        score[static_cast<std::size_t>(best)]) {
      best = b;
    }
  }
  if (best < 0) throw Error(ErrorCode::kNoFreeBinary, "every binary is fixed");
  return best;
}

SolveOutcome solve(const ilp::IlpModel& model, double timeout_s) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  auto expired = [&] { return elapsed() >= timeout_s; };

  SolveOutcome outcome;
  auto finish = [&](SolveStatus status) {
    outcome.elapsed_s = elapsed();
    outcome.status = outcome.elapsed_s >= timeout_s ? SolveStatus::kTimedOut
                                                    : status;
    if (outcome.status != SolveStatus::kFeasible) outcome.witness.reset();
    return outcome;
  };

  SearchState state(model);
  struct Decision {
    std::int32_t binary;
    std::size_t mark;
    bool tried_zero;
  };
  std::vector<Decision> decisions;

  auto satisfied_at_zero = [&] {
    for (std::size_t r = 0; r < model.constraints.size(); ++r) {
      if (state.unsatisfied_at_zero(r)) return false;
    }
    return true;
  };

  for (;;) {
    if (outcome.stats.nodes % kTimeoutCheckInterval == 0 && expired()) {
      return finish(SolveStatus::kTimedOut);
    }
    ++outcome.stats.nodes;

    if (propagate(state, &outcome.stats.propagations) ==
        PropagationResult::kConflict) {
      // Resume at the deepest decision whose 0 branch is still open.
      while (!decisions.empty() && decisions.back().tried_zero) {
        decisions.pop_back();
      }
      if (decisions.empty()) return finish(SolveStatus::kInfeasible);
      Decision& d = decisions.back();
      state.backtrack(d.mark);
      d.tried_zero = true;
      state.fix(d.binary, false);
      continue;
    }

    if (satisfied_at_zero()) {
      ilp::BinarySolution witness = state.zero_completion();
      if (!model.feasible(witness.values)) {
        throw Error(ErrorCode::kInfeasibleWitness,
                    "search produced a witness that violates the model");
      }
      outcome.witness = std::move(witness);
      return finish(SolveStatus::kFeasible);
    }

    const std::int32_t binary = choose_branch(state);
    decisions.push_back({binary, state.num_fixed(), false});
    state.fix(binary, true);
  }
}

}  // namespace limsat::solver
