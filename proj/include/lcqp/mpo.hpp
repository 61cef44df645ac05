#pragma once

// Explicit '+'/S and T layer tensors. These materialize the sparse
// pass-through tensors so the reduced Z-chain can be checked against the
// full network; contracting them is exponential in N and only meant for
// small instances.

#include <numeric>
#include <vector>

#include "lcqp/transfer.hpp"

namespace lcqp
{

// Row-major dense tensor.
template <class W>
struct DenseTensor
{
    std::vector<int> shape;
    WeightVector<W> data;

    explicit DenseTensor(std::vector<int> s) : shape(std::move(s))
    {
        const auto n = std::accumulate(shape.begin(), shape.end(), Eigen::Index{1},
                                       [](Eigen::Index a, int b) { return a * b; });
        data = WeightVector<W>::Constant(n, W(0.0));
    }

    Eigen::Index offset(std::initializer_list<int> idx) const
    {
        Eigen::Index o = 0;
        auto s = shape.begin();
        for (int i : idx)
            o = o * *s++ + i;
        return o;
    }
    W& operator()(std::initializer_list<int> idx) { return data[offset(idx)]; }
    const W& operator()(std::initializer_list<int> idx) const { return data[offset(idx)]; }
    int rank() const { return static_cast<int>(shape.size()); }
};

// S^0[i][mu][nu]          nonzero for mu = nu = i
// S^n[i][j][mu][nu]       nonzero for mu = nu = i, j carries x_{n-1}
// S^{N-1}[i][j][mu]       nonzero for mu = i
// value e^{-tau (interaction[n-1][j][i] + local[n][i])}
template <class W>
DenseTensor<W> build_s_tensor(const ChainProblem& p, const Evolution& evo, int n)
{
    const int last = p.size() - 1;
    const int d = p.dim(n);
    if (n == 0) {
        DenseTensor<W> s({d, d, d});
        for (int i = 0; i < d; ++i)
            s({i, i, i}) = from_cost<W>(evo.tau, p.local(0)[i]);
        return s;
    }
    const int dp = p.dim(n - 1);
    DenseTensor<W> s(n == last ? std::vector<int>{d, dp, d} : std::vector<int>{d, dp, d, d});
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < dp; ++j) {
            const W w = from_cost<W>(evo.tau, p.interaction(n - 1)(j, i) + p.local(n)[i]);
            if (n == last)
                s({i, j, i}) = w;
            else
                s({i, j, i, i}) = w;
        }
    return s;
}

// T^n[i][j][mu][nu], nonzero for mu = i and nu = j, couples x_n (i) with
// x_{n+1} (j). The last one also carries the local term of x_{N-1}.
template <class W>
DenseTensor<W> build_t_tensor(const ChainProblem& p, const Evolution& evo, int n)
{
    const int di = p.dim(n);
    const int dj = p.dim(n + 1);
    DenseTensor<W> t({di, dj, di, dj});
    const bool last = n == p.size() - 2;
    for (int i = 0; i < di; ++i)
        for (int j = 0; j < dj; ++j) {
            double c = p.interaction(n)(i, j) + p.local(n)[i];
            if (last)
                c += p.local(n + 1)[j];
            t({i, j, i, j}) = from_cost<W>(evo.tau, c);
        }
    return t;
}

// Amplitude of basis state x through the T layer: the product of T^n
// entries along the pass-through indices.
template <class W>
W t_layer_amplitude(const ChainProblem& p, const Evolution& evo, std::span<const int> x)
{
    W a(1.0);
    for (int n = 0; n + 1 < p.size(); ++n) {
        const auto t = build_t_tensor<W>(p, evo, n);
        a *= t({x[n], x[n + 1], x[n], x[n + 1]});
    }
    return a;
}

// Contracts the '+' input layer, the S layer and the '+' trace layer with
// site `free_site` left open, by summing over every index of the network.
// The input '+' vectors carry the evolution's phases, if any.
template <class W>
WeightVector<W> contract_s_network(const ChainProblem& p, const Evolution& evo, int free_site)
{
    const int n_sites = p.size();
    const int last = n_sites - 1;
    std::vector<DenseTensor<W>> s;
    for (int n = 0; n < n_sites; ++n)
        s.push_back(build_s_tensor<W>(p, evo, n));

    // index slots: inputs i_n, outputs mu_n, bonds nu_n (n < last)
    std::vector<int> radix;
    for (int n = 0; n < n_sites; ++n)
        radix.push_back(p.dim(n));
    for (int n = 0; n < n_sites; ++n)
        radix.push_back(p.dim(n));
    for (int n = 0; n < last; ++n)
        radix.push_back(p.dim(n));

    WeightVector<W> out = WeightVector<W>::Constant(p.dim(free_site), W(0.0));
    std::vector<int> idx(radix.size(), 0);
    for (;;) {
        const int* in = idx.data();
        const int* mu = in + n_sites;
        const int* nu = mu + n_sites;
        W a(1.0);
        for (int n = 0; n < n_sites && !(a == W(0.0)); ++n) {
            a *= WeightOps<W>::with_phase(W(1.0), evo.phase(n, in[n]));
            if (n == 0)
                a *= s[0]({in[0], mu[0], nu[0]});
            else if (n == last)
                a *= s[n]({in[n], nu[n - 1], mu[n]});
            else
                a *= s[n]({in[n], nu[n - 1], mu[n], nu[n]});
        }
        out[mu[free_site]] += a;

        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == radix[k])
            idx[k++] = 0;
        if (k == idx.size())
            break;
    }
    return out;
}

} // namespace lcqp
