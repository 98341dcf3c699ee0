#pragma once

#include <cstdint>

#include "limsat/cnf.hpp"

namespace limsat::gen {

// Uniform random k-SAT in the SATLIB "uf" style: each clause draws `width`
// distinct variables uniformly and negates each with probability 1/2. The
// result is already normalized (no duplicates, no tautologies).
cnf::CnfFormula random_ksat(std::int32_t num_vars, std::size_t num_clauses,
                            std::size_t width, std::uint64_t seed);

inline cnf::CnfFormula random_3sat(std::int32_t num_vars,
                                   std::size_t num_clauses,
                                   std::uint64_t seed) {
  return random_ksat(num_vars, num_clauses, 3, seed);
}

// Clauses of width drawn uniformly from [min_width, max_width]; widths above
// num_vars are clamped.
cnf::CnfFormula random_mixed_cnf(std::int32_t num_vars,
                                 std::size_t num_clauses,
                                 std::size_t min_width, std::size_t max_width,
                                 std::uint64_t seed);

// Pigeonhole: variable p(i, h) = i * holes + h + 1 says pigeon i sits in hole
// h. Every pigeon gets a hole; no hole holds two pigeons. Unsatisfiable when
// pigeons > holes.
cnf::CnfFormula pigeonhole(std::int32_t pigeons, std::int32_t holes);

}  // namespace limsat::gen
