#include "limsat/generate.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace limsat::gen {

namespace {

cnf::Clause DrawClause(std::mt19937_64& rng, std::int32_t num_vars,
                       std::size_t width) {
  std::uniform_int_distribution<std::int32_t> var_dist(1, num_vars);
  std::bernoulli_distribution negate(0.5);
  std::vector<std::int32_t> vars;
  while (vars.size() < width) {
    const std::int32_t v = var_dist(rng);
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  cnf::Clause clause;
  clause.reserve(width);
  for (std::int32_t v : vars) {
    clause.push_back({v, negate(rng) ? cnf::Polarity::kNegative
                                     : cnf::Polarity::kPositive});
  }
  return clause;
}

}  // namespace

cnf::CnfFormula random_ksat(std::int32_t num_vars, std::size_t num_clauses,
                            std::size_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  width = std::min(width, static_cast<std::size_t>(std::max(num_vars, 0)));
  std::vector<cnf::Clause> clauses;
  clauses.reserve(num_clauses);
  for (std::size_t j = 0; j < num_clauses && width > 0; ++j) {
    clauses.push_back(DrawClause(rng, num_vars, width));
  }
  return cnf::CnfFormula(num_vars, std::move(clauses),
                         "random-" + std::to_string(width) + "sat-n" +
                             std::to_string(num_vars) + "-seed" +
                             std::to_string(seed));
}

cnf::CnfFormula random_mixed_cnf(std::int32_t num_vars,
                                 std::size_t num_clauses,
                                 std::size_t min_width, std::size_t max_width,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto cap = static_cast<std::size_t>(std::max(num_vars, 0));
  max_width = std::min(max_width, cap);
  min_width = std::min(std::max<std::size_t>(min_width, 1), max_width);
  std::vector<cnf::Clause> clauses;
  if (max_width > 0) {
    std::uniform_int_distribution<std::size_t> width_dist(min_width, max_width);
    for (std::size_t j = 0; j < num_clauses; ++j) {
      clauses.push_back(DrawClause(rng, num_vars, width_dist(rng)));
    }
  }
  return cnf::CnfFormula(num_vars, std::move(clauses),
                         "random-mixed-n" + std::to_string(num_vars) + "-seed" +
                             std::to_string(seed));
}

cnf::CnfFormula pigeonhole(std::int32_t pigeons, std::int32_t holes) {
  auto var = [holes](std::int32_t pigeon, std::int32_t hole) {
    return pigeon * holes + hole + 1;
  };
  std::vector<cnf::Clause> clauses;
  for (std::int32_t i = 0; i < pigeons; ++i) {
    cnf::Clause somewhere;
    for (std::int32_t h = 0; h < holes; ++h) {
      somewhere.push_back({var(i, h), cnf::Polarity::kPositive});
    }
    clauses.push_back(std::move(somewhere));
  }
  for (std::int32_t h = 0; h < holes; ++h) {
    for (std::int32_t i = 0; i < pigeons; ++i) {
      for (std::int32_t j = i + 1; j < pigeons; ++j) {
        clauses.push_back({{var(i, h), cnf::Polarity::kNegative},
                           {var(j, h), cnf::Polarity::kNegative}});
      }
    }
  }
  return cnf::CnfFormula(pigeons * holes, std::move(clauses),
                         "php-" + std::to_string(pigeons) + "-" +
                             std::to_string(holes));
}

}  // namespace limsat::gen
