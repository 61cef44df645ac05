#include "lcqp/tn_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

namespace lcqp
{

std::string_view to_string(TauSchedule s)
{
    return s == TauSchedule::Fixed ? "fixed" : "rescaled";
}

std::string_view to_string(Normalization n)
{
    return n == Normalization::None ? "none" : "per_step_1norm";
}

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::Sequential: return "sequential";
    case Method::Reuse: return "reuse";
    case Method::Backtrack: return "backtrack";
    }
    return "?";
}

TauSchedule parse_tau_schedule(std::string_view text)
{
    if (text == "fixed") return TauSchedule::Fixed;
    if (text == "rescaled") return TauSchedule::Rescaled;
    throw ConfigError("unknown tau schedule '" + std::string(text) + "' (expected fixed|rescaled)");
}

Normalization parse_normalization(std::string_view text)
{
    if (text == "none" || text == "off") return Normalization::None;
    if (text == "per_step_1norm" || text == "on") return Normalization::PerStep;
    throw ConfigError("unknown normalization '" + std::string(text) + "' (expected none|per_step_1norm)");
}

Method parse_method(std::string_view text)
{
    if (text == "sequential") return Method::Sequential;
    if (text == "reuse") return Method::Reuse;
    if (text == "backtrack") return Method::Backtrack;
    throw ConfigError("unknown method '" + std::string(text) + "' (expected sequential|reuse|backtrack)");
}

void SolverConfig::validate() const
{
    if (!std::isfinite(tau) || tau < 0.0)
        throw ConfigError("tau must be finite and nonnegative");
    if (phased != (backend == Backend::Phased))
        throw ConfigError("the phased method requires backend 'phased' (and vice versa)");
    if (max_solutions < 1)
        throw ConfigError("max_solutions must be at least 1");
    if (phased && max_solutions != 1)
        throw ConfigError("the phased method cannot enumerate degenerate solutions (max_solutions must be 1)");
    if (!(phase_jitter >= 0.0))
        throw ConfigError("phase_jitter must be nonnegative");
    if (!(degeneracy_tolerance >= 0.0))
        throw ConfigError("degeneracy_tolerance must be nonnegative");
}

double effective_tau(const SolverConfig& config, int n, int pass)
{
    if (config.tau_schedule == TauSchedule::Rescaled)
        return config.tau * n / static_cast<double>(n - pass);
    return config.tau;
}

Evolution make_evolution(const ChainProblem& problem, const SolverConfig& config, double tau)
{
    Evolution evo;
    evo.tau = tau;
    if (config.backend == Backend::Phased) {
        std::mt19937_64 rng(config.phase_seed);
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        evo.phases.resize(static_cast<std::size_t>(problem.size()));
        for (int n = 0; n < problem.size(); ++n) {
            const int d = problem.dim(n);
            auto& ph = evo.phases[n];
            ph.resize(static_cast<std::size_t>(d));
            for (int v = 0; v < d; ++v) {
                ph[v] = 2.0 * std::numbers::pi * v / d;
                if (config.phase_jitter > 0.0)
                    ph[v] += config.phase_jitter * jitter(rng);
            }
        }
    }
    return evo;
}

Eigen::VectorXd bit_selector(int d, int m)
{
    if (d < 2 || m < 0 || (1 << m) >= d)
        throw ValidationError("bit " + std::to_string(m) + " does not exist for dimension " +
                              std::to_string(d));
    Eigen::VectorXd b(d);
    for (int i = 0; i < d; ++i)
        b[i] = ((i >> m) & 1) ? 1.0 : -1.0;
    return b;
}

int resolve_last(const ChainProblem& problem, int prev)
{
    const int last = problem.size() - 1;
    const auto& loc = problem.local(last);
    const auto& inter = problem.interaction(last - 1);
    int best = 0;
    double best_cost = loc[0] + inter(prev, 0);
    for (int v = 1; v < problem.dim(last); ++v) {
        const double c = loc[v] + inter(prev, v);
        if (c < best_cost) {
            best_cost = c;
            best = v;
        }
    }
    return best;
}

std::uint64_t reuse_op_count(std::span<const int> dims)
{
    std::uint64_t ops = 0;
    for (std::size_t n = 0; n < dims.size(); ++n) {
        ops += static_cast<std::uint64_t>(dims[n]);
        if (n > 0)
            ops += static_cast<std::uint64_t>(dims[n - 1]) * static_cast<std::uint64_t>(dims[n]);
    }
    return ops;
}

namespace tn
{

namespace
{

template <class W>
void maybe_normalize(WeightVector<W>& v, const SolverConfig& config, Diagnostics& diag)
{
    if (config.normalization == Normalization::PerStep)
        diag.normalization_trail.push_back(normalize_inplace<W>(v).log_factor);
}

struct NoHook
{
    template <class Z, class L>
    void operator()(int, const Z&, const L&) const
    {
    }
};

// Right environments: L[N-1] is the traced last-site vector and
// L[n] = Z^n L[n+1] down to n = stop. hook(n, Z^n, L[n+1]) runs before each
// L[n] is formed.
template <class W, class Hook = NoHook>
std::vector<WeightVector<W>> sweep(const ChainProblem& p, const Evolution& evo, const SolverConfig& config,
                                   Diagnostics& diag, OpCounter& ops, int stop, Hook&& hook = {})
{
    const int last = p.size() - 1;
    std::vector<WeightVector<W>> env(static_cast<std::size_t>(p.size()));
    env[last] = traced_transfer<W>(p, evo, ops);
    check_range<W>(env[last], "environment");
    maybe_normalize<W>(env[last], config, diag);
    for (int n = last - 1; n >= stop; --n) {
        const WeightMatrix<W> z = build_transfer<W>(p, evo, n);
        hook(n, z, env[n + 1]);
        env[n] = contract<W>(z, env[n + 1], ops);
        check_range<W>(env[n], "environment");
        maybe_normalize<W>(env[n], config, diag);
    }
    return env;
}

// argmax of a trace vector, recorded in the diagnostics. The argmax is taken
// before normalization.
template <class W>
int extract(WeightVector<W> trace, const SolverConfig& config, Diagnostics& diag)
{
    check_range<W>(trace, "trace vector");
    const int idx = argmax<W>(trace);
    maybe_normalize<W>(trace, config, diag);
    if (config.record_traces)
        diag.trace_log_magnitudes.push_back(log_magnitudes<W>(trace));
    return idx;
}

void check_chain(const ChainProblem& p)
{
    if (p.size() < 2)
        throw ValidationError("a chain needs at least 2 variables");
}

} // namespace

template <class W>
WeightVector<W> half_partial_trace(const ChainProblem& problem, const SolverConfig& config,
                                   std::span<const int> prefix)
{
    config.validate();
    check_chain(problem);
    const int k = static_cast<int>(prefix.size());
    if (k >= problem.size())
        throw ValidationError("prefix fixes every variable");
    for (int i = 0; i < k; ++i)
        if (prefix[i] < 0 || prefix[i] >= problem.dim(i))
            throw ValidationError("prefix value out of range at variable " + std::to_string(i));

    const Evolution evo = make_evolution(problem, config, effective_tau(config, problem.size(), k));
    Diagnostics diag;
    OpCounter ops;
    WeightVector<W> right;
    if (k == problem.size() - 1) {
        right = WeightVector<W>::Constant(problem.dim(k), W(1.0));
    } else {
        auto env = sweep<W>(problem, evo, config, diag, ops, k + 1);
        right = std::move(env[k + 1]);
    }
    WeightVector<W> trace = hadamard<W>(transfer_slice<W>(problem, evo, k, k ? prefix[k - 1] : 0), right, ops);
    check_range<W>(trace, "trace vector");
    maybe_normalize<W>(trace, config, diag);
    return trace;
}

template <class W>
WeightVector<W> free_site_trace(const ChainProblem& problem, const SolverConfig& config, int site)
{
    config.validate();
    check_chain(problem);
    if (site < 0 || site >= problem.size())
        throw ValidationError("site out of range");
    const Evolution evo = make_evolution(problem, config, config.tau);
    Diagnostics diag;
    OpCounter ops;

    WeightVector<W> left = boundary_transfer<W>(problem, evo);
    for (int n = 1; n <= site; ++n) {
        left = contract_left<W>(left, build_transfer<W>(problem, evo, n), ops);
        check_range<W>(left, "left environment");
        maybe_normalize<W>(left, config, diag);
    }
    WeightVector<W> right;
    if (site == problem.size() - 1) {
        right = WeightVector<W>::Constant(problem.dim(site), W(1.0));
    } else {
        auto env = sweep<W>(problem, evo, config, diag, ops, site + 1);
        right = std::move(env[site + 1]);
    }
    WeightVector<W> trace = hadamard<W>(left, right, ops);
    check_range<W>(trace, "trace vector");
    return trace;
}

template <class W>
SignedMagnitude omega(const ChainProblem& problem, const SolverConfig& config, int site, int bit)
{
    const Eigen::VectorXd selector = bit_selector(problem.dim(site), bit);
    return signed_sum<W>(free_site_trace<W>(problem, config, site), selector);
}

template <class W>
Solution solve_sequential(const ChainProblem& problem, const SolverConfig& config)
{
    config.validate();
    check_chain(problem);
    const int n = problem.size();
    const Evolution base = make_evolution(problem, config, config.tau);
    Diagnostics diag;
    OpCounter ops;
    Assignment x(static_cast<std::size_t>(n), 0);

    for (int k = 0; k + 1 < n; ++k) {
        Evolution evo = base;
        evo.tau = effective_tau(config, n, k);
        const auto env = sweep<W>(problem, evo, config, diag, ops, k + 1);
        const auto v = transfer_slice<W>(problem, evo, k, k ? x[k - 1] : 0);
        x[k] = extract<W>(hadamard<W>(v, env[k + 1], ops), config, diag);
    }
    x[n - 1] = resolve_last(problem, x[n - 2]);
    ops.mac += static_cast<std::uint64_t>(problem.dim(n - 1));
    diag.op_count = ops.mac;
    return make_solution(problem, std::move(x), std::move(diag));
}

template <class W>
Solution solve_reuse(const ChainProblem& problem, const SolverConfig& config)
{
    config.validate();
    check_chain(problem);
    const int n = problem.size();
    const Evolution evo = make_evolution(problem, config, config.tau);
    Diagnostics diag;
    OpCounter ops;
    const auto env = sweep<W>(problem, evo, config, diag, ops, 1);

    Assignment x(static_cast<std::size_t>(n), 0);
    x[0] = extract<W>(hadamard<W>(boundary_transfer<W>(problem, evo), env[1], ops), config, diag);
    for (int k = 1; k + 1 < n; ++k) {
        const auto v = transfer_slice<W>(problem, evo, k, x[k - 1]);
        x[k] = extract<W>(hadamard<W>(v, env[k + 1], ops), config, diag);
    }
    x[n - 1] = resolve_last(problem, x[n - 2]);
    ops.mac += static_cast<std::uint64_t>(problem.dim(n - 1));
    diag.op_count = ops.mac;
    return make_solution(problem, std::move(x), std::move(diag));
}

template <class W>
BacktrackTable backtrack_table(const ChainProblem& problem, const SolverConfig& config, Diagnostics* diagnostics)
{
    config.validate();
    check_chain(problem);
    const int n = problem.size();
    const Evolution evo = make_evolution(problem, config, config.tau);
    Diagnostics local_diag;
    Diagnostics& diag = diagnostics ? *diagnostics : local_diag;
    OpCounter ops;

    BacktrackTable table;
    table.next.resize(static_cast<std::size_t>(n - 1));

    // X_{N-1} by direct cost comparison
    auto& tail = table.next[n - 2];
    tail.resize(static_cast<std::size_t>(problem.dim(n - 2)));
    for (int u = 0; u < problem.dim(n - 2); ++u)
        tail[u] = resolve_last(problem, u);
    ops.mac += static_cast<std::uint64_t>(problem.dim(n - 2)) * static_cast<std::uint64_t>(problem.dim(n - 1));

    // X_k[u] = argmax_v Z^k[u][v] L^{k+1}[v], formed while the sweep has Z^k
    auto hook = [&](int k, const WeightMatrix<W>& z, const WeightVector<W>& l) {
        auto& row_best = table.next[k - 1];
        row_best.resize(static_cast<std::size_t>(z.rows()));
        for (Eigen::Index u = 0; u < z.rows(); ++u) {
            const WeightVector<W> p = hadamard<W>(z.row(u).transpose(), l, ops);
            check_range<W>(p, "trace vector");
            row_best[u] = argmax<W>(p);
        }
    };
    const auto env = sweep<W>(problem, evo, config, diag, ops, 1, hook);
    table.first = extract<W>(hadamard<W>(boundary_transfer<W>(problem, evo), env[1], ops), config, diag);
    diag.op_count = ops.mac;
    return table;
}

template <class W>
Solution solve_backtrack(const ChainProblem& problem, const SolverConfig& config)
{
    Diagnostics diag;
    const BacktrackTable table = backtrack_table<W>(problem, config, &diag);
    Assignment x(static_cast<std::size_t>(problem.size()), 0);
    x[0] = table.first;
    for (int k = 1; k < problem.size(); ++k)
        x[k] = table.next[k - 1][x[k - 1]];
    return make_solution(problem, std::move(x), std::move(diag));
}

template <class W>
std::vector<Solution> enumerate_degenerate(const ChainProblem& problem, const SolverConfig& config)
{
    config.validate();
    check_chain(problem);
    if (config.phased)
        throw ConfigError("degenerate enumeration is not available with the phased method");

    const int n = problem.size();
    const Evolution evo = make_evolution(problem, config, config.tau);
    Diagnostics diag;
    OpCounter ops;
    const auto env = sweep<W>(problem, evo, config, diag, ops, 1);

    // A value that belongs to an optimum has P_i >= e^{-tau C*}, while every
    // component is at most (#completions) e^{-tau C*}. Values within that
    // log-ratio of the peak are branch points; leaves are filtered by cost.
    const std::size_t leaf_budget = std::max<std::size_t>(1024, 64u * static_cast<std::size_t>(config.max_solutions));
    std::set<Assignment> leaves;
    std::size_t visited = 0;
    Assignment x(static_cast<std::size_t>(n), 0);

    auto dfs = [&](auto&& self, int k) -> void {
        if (visited >= leaf_budget)
            return;
        if (k == n - 1) {
            const auto& loc = problem.local(k);
            const auto& inter = problem.interaction(k - 1);
            double best = HUGE_VAL;
            for (int v = 0; v < problem.dim(k); ++v)
                best = std::min(best, loc[v] + inter(x[k - 1], v));
            for (int v = 0; v < problem.dim(k); ++v)
                if (loc[v] + inter(x[k - 1], v) - best <= config.degeneracy_tolerance * std::abs(best)) {
                    x[k] = v;
                    leaves.insert(x);
                    ++visited;
                }
            return;
        }
        const auto v = transfer_slice<W>(problem, evo, k, k ? x[k - 1] : 0);
        WeightVector<W> trace = hadamard<W>(v, env[k + 1], ops);
        check_range<W>(trace, "trace vector");
        const auto lm = log_magnitudes<W>(trace);
        const double peak = *std::max_element(lm.begin(), lm.end());
        const double window = problem.log_completions(k + 1) + config.degeneracy_tolerance;

        std::vector<int> order;
        for (int i = 0; i < static_cast<int>(lm.size()); ++i)
            if (peak - lm[i] <= window)
                order.push_back(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lm[a] > lm[b]; });
        for (int i : order) {
            x[k] = i;
            self(self, k + 1);
        }
    };
    dfs(dfs, 0);

    std::vector<Solution> out;
    for (const auto& a : leaves)
        out.push_back(make_solution(problem, a));
    std::stable_sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) { return a.cost < b.cost; });
    const double best = out.front().cost;
    std::erase_if(out, [&](const Solution& s) {
        return s.cost - best > config.degeneracy_tolerance * std::abs(best);
    });
    if (static_cast<int>(out.size()) > config.max_solutions)
        out.resize(static_cast<std::size_t>(config.max_solutions));
    for (auto& s : out)
        s.diagnostics.op_count = ops.mac;
    return out;
}

#define LCQP_INSTANTIATE(W)                                                                               \
    template WeightVector<W> half_partial_trace<W>(const ChainProblem&, const SolverConfig&,             \
                                                   std::span<const int>);                                \
    template WeightVector<W> free_site_trace<W>(const ChainProblem&, const SolverConfig&, int);          \
    template SignedMagnitude omega<W>(const ChainProblem&, const SolverConfig&, int, int);               \
    template Solution solve_sequential<W>(const ChainProblem&, const SolverConfig&);                     \
    template Solution solve_reuse<W>(const ChainProblem&, const SolverConfig&);                          \
    template BacktrackTable backtrack_table<W>(const ChainProblem&, const SolverConfig&, Diagnostics*);  \
    template Solution solve_backtrack<W>(const ChainProblem&, const SolverConfig&);                      \
    template std::vector<Solution> enumerate_degenerate<W>(const ChainProblem&, const SolverConfig&);

LCQP_INSTANTIATE(double)
LCQP_INSTANTIATE(LogWeight)
LCQP_INSTANTIATE(Phased)

#undef LCQP_INSTANTIATE

} // namespace tn

namespace
{

template <class F>
decltype(auto) dispatch(Backend backend, F&& f)
{
    switch (backend) {
    case Backend::F64: return f(double{});
    case Backend::LogDomain: return f(LogWeight{});
    case Backend::Phased: return f(Phased{});
    }
    throw ConfigError("unknown backend");
}

} // namespace

Solution solve_sequential(const ChainProblem& problem, const SolverConfig& config)
{
    return dispatch(config.backend, [&](auto w) { return tn::solve_sequential<decltype(w)>(problem, config); });
}

Solution solve_reuse(const ChainProblem& problem, const SolverConfig& config)
{
    return dispatch(config.backend, [&](auto w) { return tn::solve_reuse<decltype(w)>(problem, config); });
}

Solution solve_backtrack(const ChainProblem& problem, const SolverConfig& config)
{
    return dispatch(config.backend, [&](auto w) { return tn::solve_backtrack<decltype(w)>(problem, config); });
}

Solution solve(const ChainProblem& problem, const SolverConfig& config, Method method)
{
    switch (method) {
    case Method::Sequential: return solve_sequential(problem, config);
    case Method::Reuse: return solve_reuse(problem, config);
    case Method::Backtrack: return solve_backtrack(problem, config);
    }
    throw ConfigError("unknown method");
}

BacktrackTable backtrack_table(const ChainProblem& problem, const SolverConfig& config)
{
    return dispatch(config.backend,
                    [&](auto w) { return tn::backtrack_table<decltype(w)>(problem, config); });
}

std::vector<Solution> enumerate_degenerate(const ChainProblem& problem, const SolverConfig& config)
{
    return dispatch(config.backend,
                    [&](auto w) { return tn::enumerate_degenerate<decltype(w)>(problem, config); });
}

SignedMagnitude omega(const ChainProblem& problem, const SolverConfig& config, int site, int bit)
{
    return dispatch(config.backend, [&](auto w) { return tn::omega<decltype(w)>(problem, config, site, bit); });
}

std::vector<double> half_partial_trace_log(const ChainProblem& problem, const SolverConfig& config,
                                           std::span<const int> prefix)
{
    return dispatch(config.backend, [&](auto w) {
        using W = decltype(w);
        return log_magnitudes<W>(tn::half_partial_trace<W>(problem, config, prefix));
    });
}

} // namespace lcqp
