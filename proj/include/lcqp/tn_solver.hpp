#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lcqp/problem.hpp"
#include "lcqp/transfer.hpp"
#include "lcqp/weight.hpp"

namespace lcqp
{

enum class TauSchedule
{
    Fixed,
    Rescaled // tau_k = tau N / (N - k) on sequential pass k
};

enum class Normalization
{
    None,
    PerStep // every environment and trace vector rescaled to 1-norm = its length
};

enum class Method
{
    Sequential,
    Reuse,
    Backtrack
};

std::string_view to_string(TauSchedule s);
std::string_view to_string(Normalization n);
std::string_view to_string(Method m);
TauSchedule parse_tau_schedule(std::string_view text);
Normalization parse_normalization(std::string_view text);
Method parse_method(std::string_view text);

struct SolverConfig
{
    double tau = 50.0;
    TauSchedule tau_schedule = TauSchedule::Fixed;
    Backend backend = Backend::LogDomain;
    Normalization normalization = Normalization::PerStep;
    bool phased = false;
    double phase_jitter = 0.0;
    std::uint64_t phase_seed = 0;
    double degeneracy_tolerance = 1e-9;
    int max_solutions = 1;
    bool record_traces = false;

    // Throws ConfigError. Requires phased <=> backend == Phased and
    // phased => max_solutions == 1.
    void validate() const;
};

// tau for sequential pass k of an n-variable chain
double effective_tau(const SolverConfig& config, int n, int pass);

Evolution make_evolution(const ChainProblem& problem, const SolverConfig& config, double tau);

// X_0 and X_1..X_{N-1}; next[n - 1][u] is the best x_n given x_{n-1} = u.
struct BacktrackTable
{
    int first = 0;
    std::vector<std::vector<int>> next;
};

// B^{D,m}_i = (-1)^{b(i)_m + 1}: -1 where bit m of i is clear, +1 where set.
Eigen::VectorXd bit_selector(int d, int m);

inline int heaviside(const SignedMagnitude& s)
{
    return s.sign > 0 ? 1 : 0;
}

// argmin_v local[N-1][v] + interaction[N-2][prev][v], lowest index on ties
int resolve_last(const ChainProblem& problem, int prev);

// Multiply-accumulates performed by solve_reuse:
//   sum_{n=1}^{N-1} D_{n-1} D_n + sum_{n=0}^{N-1} D_n
std::uint64_t reuse_op_count(std::span<const int> dims);

namespace tn
{

// P over x_k with x_0..x_{k-1} fixed to prefix: V^k (.) L^{k+1}, evaluated at
// the pass's effective tau.
template <class W>
WeightVector<W> half_partial_trace(const ChainProblem& problem, const SolverConfig& config,
                                   std::span<const int> prefix);

// P over x_site with every other variable traced and no reduction.
template <class W>
WeightVector<W> free_site_trace(const ChainProblem& problem, const SolverConfig& config, int site);

// Network with B^{D_site, bit} attached at `site`. x_{site,bit} = H(omega)
// for large tau.
template <class W>
SignedMagnitude omega(const ChainProblem& problem, const SolverConfig& config, int site, int bit);

template <class W>
Solution solve_sequential(const ChainProblem& problem, const SolverConfig& config);

template <class W>
Solution solve_reuse(const ChainProblem& problem, const SolverConfig& config);

template <class W>
BacktrackTable backtrack_table(const ChainProblem& problem, const SolverConfig& config,
                               Diagnostics* diagnostics = nullptr);

template <class W>
Solution solve_backtrack(const ChainProblem& problem, const SolverConfig& config);

template <class W>
std::vector<Solution> enumerate_degenerate(const ChainProblem& problem, const SolverConfig& config);

template <class W>
int extract_value(const WeightVector<W>& p)
{
    return argmax<W>(p);
}

// H(P[1] - P[0]) on magnitudes, H(0) = 0
template <class W>
int extract_sign_qubo(const WeightVector<W>& p)
{
    return WeightOps<W>::key(p[1]) > WeightOps<W>::key(p[0]) ? 1 : 0;
}

} // namespace tn

// Backend chosen from config.backend.
Solution solve_sequential(const ChainProblem& problem, const SolverConfig& config);
Solution solve_reuse(const ChainProblem& problem, const SolverConfig& config);
Solution solve_backtrack(const ChainProblem& problem, const SolverConfig& config);
Solution solve(const ChainProblem& problem, const SolverConfig& config, Method method);
BacktrackTable backtrack_table(const ChainProblem& problem, const SolverConfig& config);
std::vector<Solution> enumerate_degenerate(const ChainProblem& problem, const SolverConfig& config);
SignedMagnitude omega(const ChainProblem& problem, const SolverConfig& config, int site, int bit);

// Half Partial Trace as log-magnitudes, backend chosen from config.backend.
std::vector<double> half_partial_trace_log(const ChainProblem& problem, const SolverConfig& config,
                                           std::span<const int> prefix);

} // namespace lcqp
