// lcqp: generate, solve and benchmark linear-chain QUBO/QUDO/T-QUDO instances.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcqp/bench.hpp"
#include "lcqp/errors.hpp"
#include "lcqp/instance_io.hpp"
#include "lcqp/oracle.hpp"
#include "lcqp/problem.hpp"
#include "lcqp/tn_solver.hpp"

using nlohmann::json;
using namespace lcqp;

namespace
{

constexpr int exit_error = 1;
constexpr int exit_range = 2;

struct Options
{
    std::string kind = "qudo";
    int n = 0;
    int d = 0;
    std::vector<int> dims;
    std::optional<std::uint64_t> seed;
    std::string in;
    std::string out;

    double tau = 50.0;
    std::string tau_schedule = "fixed";
    std::string method = "reuse";
    std::string backend = "logdomain";
    bool phased = false;
    double phase_jitter = 0.0;
    int max_solutions = 1;
    std::string normalize = "on";
    std::string oracle = "dp";

    std::string sweep = "n";
    std::vector<int> grid;
    std::string csv;
    int repeats = 3;
};

std::uint64_t resolve_seed(const Options& o)
{
    if (o.seed)
        return *o.seed;
    if (const char* env = std::getenv("LCQP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ValidationError(std::string("LCQP_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

SolverConfig solver_config(const Options& o)
{
    SolverConfig c;
    c.tau = o.tau;
    c.tau_schedule = parse_tau_schedule(o.tau_schedule);
    c.backend = o.phased ? Backend::Phased : parse_backend(o.backend);
    c.phased = c.backend == Backend::Phased;
    c.phase_jitter = o.phase_jitter;
    c.max_solutions = o.max_solutions;
    c.normalization = parse_normalization(o.normalize);
    c.phase_seed = resolve_seed(o);
    c.validate();
    return c;
}

void add_solver_flags(CLI::App* app, Options& o)
{
    app->add_option("--tau", o.tau, "decay hyperparameter");
    app->add_option("--tau-schedule", o.tau_schedule, "fixed|rescaled (rescaled applies to sequential)");
    app->add_option("--method", o.method, "sequential|reuse|backtrack");
    app->add_option("--backend", o.backend, "f64|logdomain|phased");
    app->add_flag("--phased", o.phased, "phased (Humbucker) initialization; implies --backend phased");
    app->add_option("--phase-jitter", o.phase_jitter, "amplitude of random per-state phase offsets");
    app->add_option("--max-solutions", o.max_solutions, "enumerate up to M degenerate optima");
    app->add_option("--normalize", o.normalize, "on|off (per-step 1-norm normalization)");
    app->add_option("--seed", o.seed, "seed for phase jitter (falls back to LCQP_SEED)");
}

json solution_json(const Solution& s, std::string_view method, const SolverConfig* config)
{
    json j;
    j["assignment"] = s.assignment;
    j["cost"] = s.cost;
    j["method"] = method;
    if (config) {
        j["tau"] = config->tau;
        j["backend"] = to_string(config->backend);
        j["tau_schedule"] = to_string(config->tau_schedule);
        j["normalization"] = to_string(config->normalization);
    }
    j["normalization_trail"] = s.diagnostics.normalization_trail;
    j["op_count"] = s.diagnostics.op_count;
    j["branches"] = 1;
    return j;
}

int cmd_generate(const Options& o)
{
    const ProblemKind kind = parse_kind(o.kind);
    std::vector<int> dims = o.dims;
    if (dims.empty()) {
        if (o.n < 2)
            throw ValidationError("--n must be at least 2");
        const int d = kind == ProblemKind::Qubo && o.d == 0 ? 2 : o.d;
        if (d < 2)
            throw ValidationError("--d must be at least 2");
        dims.assign(static_cast<std::size_t>(o.n), d);
    } else if (o.n != 0 && o.n != static_cast<int>(dims.size())) {
        throw ValidationError("--n disagrees with the length of --dims");
    }
    const ChainProblem p = generate_random(kind, dims, resolve_seed(o));
    if (o.out.empty()) {
        std::cout << instance_to_json(p) << '\n';
        return 0;
    }
    write_instance(p, o.out);
    std::cout << o.out << ": " << to_string(p.kind()) << " n=" << p.size() << " max_d=" << p.max_dim()
              << " seed=" << *p.seed() << '\n';
    return 0;
}

int cmd_solve(const Options& o)
{
    const ChainProblem p = read_instance(o.in);
    const SolverConfig config = solver_config(o);
    const Method method = parse_method(o.method);
    json j;
    if (config.max_solutions > 1) {
        const auto all = enumerate_degenerate(p, config);
        j = solution_json(all.front(), "degenerate", &config);
        json list = json::array();
        for (const auto& s : all)
            list.push_back({{"assignment", s.assignment}, {"cost", s.cost}});
        j["solutions"] = std::move(list);
        j["branches"] = all.size();
    } else {
        j = solution_json(solve(p, config, method), to_string(method), &config);
    }
    std::cout << j.dump() << '\n';
    return 0;
}

OracleResult run_oracle(const ChainProblem& p, const std::string& which)
{
    if (which == "dp")
        return dp_solve(p);
    if (which == "bruteforce")
        return brute_force(p);
    throw ConfigError("unknown oracle '" + which + "' (expected dp|bruteforce)");
}

int cmd_oracle(const Options& o, const std::string& which)
{
    const ChainProblem p = read_instance(o.in);
    const OracleResult r = run_oracle(p, which);
    json j = solution_json(make_solution(p, r.optima.front()), which, nullptr);
    j["optimum_count"] = r.optimum_count;
    j["visited"] = r.visited;
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_compare(const Options& o)
{
    const ChainProblem p = read_instance(o.in);
    const SolverConfig config = solver_config(o);
    const Method method = parse_method(o.method);
    const Solution s = solve(p, config, method);
    const OracleResult r = run_oracle(p, o.oracle);
    const auto ratio = cost_ratio(s.cost, r.best_cost);

    json j;
    j["method"] = to_string(method);
    j["oracle"] = o.oracle;
    j["assignment"] = s.assignment;
    j["oracle_assignment"] = r.optima.front();
    j["cost"] = s.cost;
    j["oracle_cost"] = r.best_cost;
    j["ratio"] = ratio ? json(*ratio) : json(nullptr);
    j["match"] = std::find(r.optima.begin(), r.optima.end(), s.assignment) != r.optima.end();
    j["tau"] = config.tau;
    j["backend"] = to_string(config.backend);
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_bench(const Options& o)
{
    SweepSpec spec;
    spec.axis = o.sweep == "n" ? SweepAxis::N : o.sweep == "d" ? SweepAxis::D
                                                               : throw ConfigError("--sweep must be n or d");
    spec.kind = parse_kind(o.kind);
    spec.config = solver_config(o);
    spec.seed = resolve_seed(o);
    spec.repeats = o.repeats;
    spec.methods.clear();
    std::stringstream ms(o.method);
    for (std::string m; std::getline(ms, m, ',');)
        spec.methods.push_back(parse_method(m));
    if (spec.axis == SweepAxis::N) {
        spec.fixed = o.d ? o.d : 4;
        spec.grid = o.grid.empty() ? geometric_grid(64, 4096, 13) : o.grid;
    } else {
        spec.fixed = o.n ? o.n : 64;
        spec.grid = o.grid.empty() ? geometric_grid(4, 128, 11) : o.grid;
    }
    const auto records = run_sweep(spec);
    if (o.csv.empty()) {
        write_csv(std::cout, records, spec.axis);
    } else {
        std::ofstream out(o.csv);
        if (!out)
            throw Error("cannot open '" + o.csv + "'");
        write_csv(out, records, spec.axis);
        for (const auto& s : fit_slopes(records, spec.axis))
            std::cout << to_string(s.method) << " slope " << s.slope << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tensor-network solver for linear-chain QUBO, QUDO and Tensor-QUDO problems"};
    app.require_subcommand(1);
    Options o;
    std::string oracle_method = "dp";

    auto* gen = app.add_subcommand("generate", "write a normalized random instance");
    gen->add_option("--kind", o.kind, "qubo|qudo|tqudo");
    gen->add_option("--n", o.n, "number of variables");
    gen->add_option("--d", o.d, "dimension of every variable");
    gen->add_option("--dims", o.dims, "per-variable dimensions")->delimiter(',');
    gen->add_option("--seed", o.seed, "generator seed (falls back to LCQP_SEED)");
    gen->add_option("--out", o.out, "output path (stdout if omitted)");

    auto* sol = app.add_subcommand("solve", "solve an instance and print the solution JSON");
    sol->add_option("--in", o.in, "instance file")->required();
    add_solver_flags(sol, o);

    auto* orc = app.add_subcommand("oracle", "exact solution by dp or brute force");
    orc->add_option("--in", o.in, "instance file")->required();
    orc->add_option("--method", oracle_method, "dp|bruteforce");

    auto* cmp = app.add_subcommand("compare", "solve, run an oracle and report the cost ratio");
    cmp->add_option("--in", o.in, "instance file")->required();
    cmp->add_option("--oracle", o.oracle, "dp|bruteforce");
    add_solver_flags(cmp, o);

    auto* bench = app.add_subcommand("bench", "scaling sweep, CSV output");
    bench->add_option("--sweep", o.sweep, "n|d");
    bench->add_option("--grid", o.grid, "grid points")->delimiter(',');
    bench->add_option("--kind", o.kind, "qubo|qudo|tqudo");
    bench->add_option("--n", o.n, "fixed N for a d sweep");
    bench->add_option("--d", o.d, "fixed D for an n sweep");
    bench->add_option("--csv", o.csv, "CSV output path (stdout if omitted)");
    bench->add_option("--repeats", o.repeats, "timed repeats per point (median is reported)");
    add_solver_flags(bench, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(o);
        if (sol->parsed())
            return cmd_solve(o);
        if (orc->parsed())
            return cmd_oracle(o, oracle_method);
        if (cmp->parsed())
            return cmd_compare(o);
        if (bench->parsed())
            return cmd_bench(o);
    } catch (const NumericRangeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_range;
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
