#pragma once

#include <cstdint>
#include <vector>

#include "lcqp/problem.hpp"
#include "lcqp/weight.hpp"

namespace lcqp
{

// Multiply-accumulate counter for contractions. Only contraction work is
// counted; building tensor entries (one exp each) is not.
struct OpCounter
{
    std::uint64_t mac = 0;
};

// Decay parameter plus, for the phased backend, the phase angle attached to
// every (site, value) basis state.
struct Evolution
{
    double tau = 1.0;
    std::vector<std::vector<double>> phases;

    double phase(int n, int v) const
    {
        return phases.empty() ? 0.0 : phases[static_cast<std::size_t>(n)][static_cast<std::size_t>(v)];
    }
};

template <class W>
W site_weight(const Evolution& evo, int n, int v, double cost)
{
    return WeightOps<W>::with_phase(from_cost<W>(evo.tau, cost), evo.phase(n, v));
}

// Z^0[v] = e^{-tau local[0][v]}
template <class W>
WeightVector<W> boundary_transfer(const ChainProblem& p, const Evolution& evo)
{
    WeightVector<W> z(p.dim(0));
    for (int v = 0; v < p.dim(0); ++v)
        z[v] = site_weight<W>(evo, 0, v, p.local(0)[v]);
    return z;
}

// Z^n[u][v] = e^{-tau (interaction[n-1][u][v] + local[n][v])} for n >= 1.
// For n = 0 the boundary vector is returned as a 1 x D_0 matrix.
template <class W>
WeightMatrix<W> build_transfer(const ChainProblem& p, const Evolution& evo, int n)
{
    if (n < 0 || n >= p.size())
        throw ValidationError("transfer index out of range");
    if (n == 0)
        return boundary_transfer<W>(p, evo).transpose();
    const auto& inter = p.interaction(n - 1);
    const auto& loc = p.local(n);
    WeightMatrix<W> z(p.dim(n - 1), p.dim(n));
    for (int u = 0; u < z.rows(); ++u)
        for (int v = 0; v < z.cols(); ++v)
            z(u, v) = site_weight<W>(evo, n, v, inter(u, v) + loc[v]);
    return z;
}

// V^n: row `prev` of Z^n, built without materializing the matrix.
template <class W>
WeightVector<W> transfer_slice(const ChainProblem& p, const Evolution& evo, int n, int prev)
{
    if (n == 0)
        return boundary_transfer<W>(p, evo);
    const auto& inter = p.interaction(n - 1);
    const auto& loc = p.local(n);
    WeightVector<W> z(p.dim(n));
    for (int v = 0; v < p.dim(n); ++v)
        z[v] = site_weight<W>(evo, n, v, inter(prev, v) + loc[v]);
    return z;
}

// out[u] = sum_v z(u, v) * l[v]
template <class W>
WeightVector<W> contract(const WeightMatrix<W>& z, const WeightVector<W>& l, OpCounter& ops)
{
    ops.mac += static_cast<std::uint64_t>(z.rows() * z.cols());
    if constexpr (std::is_same_v<W, LogWeight>) {
        WeightVector<W> out(z.rows());
        std::vector<double> terms(static_cast<std::size_t>(z.cols()));
        for (Eigen::Index u = 0; u < z.rows(); ++u) {
            double m = -HUGE_VAL;
            for (Eigen::Index v = 0; v < z.cols(); ++v) {
                terms[v] = z(u, v).log + l[v].log;
                m = std::max(m, terms[v]);
            }
            if (m == -HUGE_VAL) {
                out[u] = LogWeight{};
                continue;
            }
            double s = 0.0;
            for (double t : terms)
                s += std::exp(t - m);
            out[u] = LogWeight::from_log(m + std::log(s));
        }
        return out;
    } else {
        return z * l;
    }
}

// out[v] = sum_u r[u] * z(u, v)
template <class W>
WeightVector<W> contract_left(const WeightVector<W>& r, const WeightMatrix<W>& z, OpCounter& ops)
{
    if constexpr (std::is_same_v<W, LogWeight>) {
        const WeightMatrix<W> zt = z.transpose();
        return contract<W>(zt, r, ops);
    } else {
        ops.mac += static_cast<std::uint64_t>(z.rows() * z.cols());
        return z.transpose() * r;
    }
}

// Traced last-site vector: sum_v Z^{N-1}[u][v], indexed by x_{N-2}.
template <class W>
WeightVector<W> traced_transfer(const ChainProblem& p, const Evolution& evo, OpCounter& ops)
{
    const WeightMatrix<W> z = build_transfer<W>(p, evo, p.size() - 1);
    const WeightVector<W> ones = WeightVector<W>::Constant(z.cols(), W(1.0));
    return contract<W>(z, ones, ops);
}

template <class W>
WeightVector<W> hadamard(const WeightVector<W>& a, const WeightVector<W>& b, OpCounter& ops)
{
    ops.mac += static_cast<std::uint64_t>(a.size());
    return a.cwiseProduct(b);
}

} // namespace lcqp
