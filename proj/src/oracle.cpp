#include "lcqp/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lcqp/errors.hpp"

namespace lcqp
{

OracleResult brute_force(const ChainProblem& problem, std::size_t cap)
{
    const int n = problem.size();
    double space = 1.0;
    for (int d : problem.dims())
        space *= d;
    if (space > brute_force_guard)
        throw GuardError("brute force over " + std::to_string(space) +
                         " assignments exceeds the 1e7 guard; use the dp oracle");

    OracleResult r;
    r.best_cost = std::numeric_limits<double>::infinity();
    Assignment x(static_cast<std::size_t>(n), 0);
    std::vector<double> prefix(static_cast<std::size_t>(n));

    // prefix[k] = cost of x_0..x_k, refreshed from the lowest changed site
    auto refresh = [&](int from) {
        for (int k = from; k < n; ++k) {
            if (k == 0) {
                prefix[0] = problem.local(0)[x[0]];
            } else {
                double c = prefix[k - 1];
                c += problem.interaction(k - 1)(x[k - 1], x[k]);
                c += problem.local(k)[x[k]];
                prefix[k] = c;
            }
        }
    };
    refresh(0);
    for (;;) {
        ++r.visited;
        const double c = prefix[n - 1];
        if (c < r.best_cost) {
            r.best_cost = c;
            r.optima.clear();
            r.optimum_count = 0;
        }
        if (c == r.best_cost) {
            ++r.optimum_count;
            if (r.optima.size() < cap)
                r.optima.push_back(x);
        }

        int k = n - 1;
        while (k >= 0 && ++x[k] == problem.dim(k))
            x[k--] = 0;
        if (k < 0)
            break;
        refresh(k);
    }
    return r;
}

namespace
{

// g[n][v] = local[n][v] + min_w interaction[n][v][w] + g[n+1][w]
struct Backward
{
    std::vector<Eigen::VectorXd> cost;
    std::vector<std::vector<int>> choice;
};

Backward backward_pass(const ChainProblem& p)
{
    const int n = p.size();
    Backward b;
    b.cost.resize(static_cast<std::size_t>(n));
    b.choice.resize(static_cast<std::size_t>(n));
    b.cost[n - 1] = p.local(n - 1);
    for (int k = n - 2; k >= 0; --k) {
        const auto& inter = p.interaction(k);
        auto& g = b.cost[k];
        auto& ch = b.choice[k];
        g.resize(p.dim(k));
        ch.resize(static_cast<std::size_t>(p.dim(k)));
        for (int v = 0; v < p.dim(k); ++v) {
            int best = 0;
            double best_c = inter(v, 0) + b.cost[k + 1][0];
            for (int w = 1; w < p.dim(k + 1); ++w) {
                const double c = inter(v, w) + b.cost[k + 1][w];
                if (c < best_c) {
                    best_c = c;
                    best = w;
                }
            }
            g[v] = p.local(k)[v] + best_c;
            ch[v] = best;
        }
    }
    return b;
}

} // namespace

OracleResult dp_solve(const ChainProblem& problem)
{
    const int n = problem.size();
    const Backward b = backward_pass(problem);
    Assignment x(static_cast<std::size_t>(n), 0);
    Eigen::Index first = 0;
    b.cost[0].minCoeff(&first);
    x[0] = static_cast<int>(first);
    for (int k = 0; k + 1 < n; ++k)
        x[k + 1] = b.choice[k][x[k]];

    OracleResult r;
    r.best_cost = evaluate_cost(problem, x);
    r.optima.push_back(std::move(x));
    r.optimum_count = 1;
    for (int k = 0; k + 1 < n; ++k)
        r.visited += static_cast<std::uint64_t>(problem.dim(k)) * static_cast<std::uint64_t>(problem.dim(k + 1));
    return r;
}

std::vector<Eigen::VectorXd> min_marginals(const ChainProblem& problem)
{
    const int n = problem.size();
    const Backward b = backward_pass(problem);
    std::vector<Eigen::VectorXd> fwd(static_cast<std::size_t>(n));
    fwd[0] = problem.local(0);
    for (int k = 1; k < n; ++k) {
        const auto& inter = problem.interaction(k - 1);
        fwd[k].resize(problem.dim(k));
        for (int v = 0; v < problem.dim(k); ++v) {
            double best = std::numeric_limits<double>::infinity();
            for (int u = 0; u < problem.dim(k - 1); ++u)
                best = std::min(best, fwd[k - 1][u] + inter(u, v));
            fwd[k][v] = best + problem.local(k)[v];
        }
    }
    std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        out[k] = fwd[k] + b.cost[k] - problem.local(k);
    return out;
}

double optimality_gap(const ChainProblem& problem)
{
    const auto m = min_marginals(problem);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : m)
        best = std::min(best, v.minCoeff());
    double second = std::numeric_limits<double>::infinity();
    for (const auto& v : m) {
        Eigen::Index arg = 0;
        v.minCoeff(&arg);
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (i != arg)
                second = std::min(second, v[i]);
    }
    return std::max(0.0, second - best);
}

} // namespace lcqp
