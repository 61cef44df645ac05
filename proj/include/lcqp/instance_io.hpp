#pragma once

#include <filesystem>
#include <string>

#include "lcqp/problem.hpp"

namespace lcqp
{

// JSON instance text:
//   {"kind": "qubo|qudo|tqudo", "n": N, "dims": [...],
//    "local": [[...], ...], "interaction": [[[...]], ...],
//    "meta": {"seed": ..., "generator": "...", "raw": {"w_diag", "w_off", "d"}}}
// Interaction rows are indexed by x_n, columns by x_{n+1}. Doubles are written
// in shortest round-trip form so a write/read cycle is bit-exact.
std::string instance_to_json(const ChainProblem& problem);
ChainProblem instance_from_json(const std::string& text);

void write_instance(const ChainProblem& problem, const std::filesystem::path& path);
ChainProblem read_instance(const std::filesystem::path& path);

} // namespace lcqp
