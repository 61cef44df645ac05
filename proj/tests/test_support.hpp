#pragma once

// Exhaustive reference computations shared by the unit and acceptance
// suites. Nothing here goes through the transfer-tensor code.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "lcqp/problem.hpp"

namespace lcqp::test
{

inline void for_each_assignment(const std::vector<int>& dims, const std::function<void(const Assignment&)>& f)
{
    Assignment x(dims.size(), 0);
    for (;;) {
        f(x);
        std::size_t k = 0;
        while (k < x.size() && ++x[k] == dims[k])
            x[k++] = 0;
        if (k == x.size())
            return;
    }
}

// Cost of sites k..N-1 plus the link from x_{k-1}, summed term by term.
inline double suffix_cost(const ChainProblem& p, const Assignment& x, int k)
{
    double c = 0.0;
    for (int j = k; j < p.size(); ++j) {
        if (j > 0)
            c += p.interaction(j - 1)(x[j - 1], x[j]);
        c += p.local(j)[x[j]];
    }
    return c;
}

// P[i] = sum over assignments with x_0..x_{k-1} = prefix and x_k = i of
// exp(-tau * suffix_cost)
inline std::vector<double> brute_trace(const ChainProblem& p, double tau, const Assignment& prefix)
{
    const int k = static_cast<int>(prefix.size());
    std::vector<double> out(static_cast<std::size_t>(p.dim(k)), 0.0);
    for_each_assignment(p.dims(), [&](const Assignment& x) {
        for (int j = 0; j < k; ++j)
            if (x[j] != prefix[j])
                return;
        out[x[k]] += std::exp(-tau * suffix_cost(p, x, k));
    });
    return out;
}

// Marginal sum with x_site free and nothing fixed.
inline std::vector<double> brute_marginal(const ChainProblem& p, double tau, int site)
{
    std::vector<double> out(static_cast<std::size_t>(p.dim(site)), 0.0);
    for_each_assignment(p.dims(), [&](const Assignment& x) { out[x[site]] += std::exp(-tau * suffix_cost(p, x, 0)); });
    return out;
}

inline double brute_partition(const ChainProblem& p, double tau)
{
    double z = 0.0;
    for_each_assignment(p.dims(), [&](const Assignment& x) { z += std::exp(-tau * suffix_cost(p, x, 0)); });
    return z;
}

struct BruteOptimum
{
    double best = INFINITY;
    std::vector<Assignment> optima;
};

inline BruteOptimum brute_optima(const ChainProblem& p, double rel_tol = 0.0)
{
    BruteOptimum r;
    std::vector<std::pair<double, Assignment>> all;
    for_each_assignment(p.dims(), [&](const Assignment& x) {
        const double c = suffix_cost(p, x, 0);
        all.emplace_back(c, x);
        r.best = std::min(r.best, c);
    });
    for (auto& [c, x] : all)
        if (c - r.best <= rel_tol * std::abs(r.best))
            r.optima.push_back(x);
    return r;
}

inline double relative_error(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// T-QUDO with small integer costs; sums of such entries are exact.
inline ChainProblem integer_problem(std::mt19937_64& rng, const std::vector<int>& dims, int lo, int hi)
{
    std::uniform_int_distribution<int> pick(lo, hi);
    std::vector<Eigen::VectorXd> local;
    std::vector<Eigen::MatrixXd> inter;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        Eigen::VectorXd l(dims[i]);
        for (int v = 0; v < dims[i]; ++v)
            l[v] = pick(rng);
        local.push_back(l);
        if (i + 1 < dims.size()) {
            Eigen::MatrixXd m(dims[i], dims[i + 1]);
            for (int u = 0; u < dims[i]; ++u)
                for (int v = 0; v < dims[i + 1]; ++v)
                    m(u, v) = pick(rng);
            inter.push_back(m);
        }
    }
    return ChainProblem::from_tables(ProblemKind::TensorQudo, std::move(local), std::move(inter));
}

inline ChainProblem qubo2(double w00, double w11, double w01)
{
    return ChainProblem::quadratic(ProblemKind::Qubo, {2, 2}, {{w00, w11}, {w01}, {}});
}

} // namespace lcqp::test
