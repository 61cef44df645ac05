#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lcqp/problem.hpp"

namespace lcqp
{

struct OracleResult
{
    double best_cost = 0.0;
    // minimizers in enumeration order, at most the requested cap
    std::vector<Assignment> optima;
    // total number of minimizers found (may exceed optima.size())
    std::uint64_t optimum_count = 0;
    std::uint64_t visited = 0;
};

inline constexpr double brute_force_guard = 1e7;

// Exhaustive enumeration. Costs are accumulated in evaluate_cost's order, so
// every listed optimum evaluates to best_cost bit-exactly.
OracleResult brute_force(const ChainProblem& problem, std::size_t cap = 64);

// Min-plus chain recursion, O(N D^2), lowest-index tie-break. best_cost is
// the recomputed cost of the returned assignment.
OracleResult dp_solve(const ChainProblem& problem);

// marginals[n][v] = min cost over assignments with x_n = v.
std::vector<Eigen::VectorXd> min_marginals(const ChainProblem& problem);

// Second-best minus best cost (0 for degenerate instances).
double optimality_gap(const ChainProblem& problem);

} // namespace lcqp
