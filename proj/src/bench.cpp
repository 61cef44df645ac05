#include "lcqp/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "lcqp/errors.hpp"
#include "lcqp/oracle.hpp"

namespace lcqp
{

std::optional<double> cost_ratio(double cost, double oracle_cost)
{
    if (oracle_cost == 0.0)
        return std::nullopt;
    return cost / oracle_cost;
}

std::vector<int> geometric_grid(int lo, int hi, int points)
{
    if (lo < 1 || hi < lo || points < 1)
        throw ValidationError("invalid grid bounds");
    std::vector<int> out;
    if (points == 1 || lo == hi)
        return {lo};
    const double step = std::log(static_cast<double>(hi) / lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const int v = static_cast<int>(std::lround(lo * std::exp(step * i)));
        if (out.empty() || v != out.back())
            out.push_back(v);
    }
    out.back() = hi;
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw ValidationError("slope fit needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double median(std::vector<double> v)
{
    if (v.empty())
        throw ValidationError("median of nothing");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

namespace
{

double time_solve(const ChainProblem& p, const SolverConfig& config, Method method, double min_seconds)
{
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    std::size_t iters = 0;
    double elapsed = 0.0;
    do {
        volatile double sink = solve(p, config, method).cost;
        (void)sink;
        ++iters;
        elapsed = std::chrono::duration<double>(clock::now() - start).count();
    } while (elapsed < min_seconds);
    return elapsed / static_cast<double>(iters);
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

std::vector<BenchRecord> run_sweep(const SweepSpec& spec)
{
    spec.config.validate();
    if (spec.repeats < 3)
        throw ConfigError("timings need at least 3 repeats");
    std::vector<BenchRecord> out;
    for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
        const int n = spec.axis == SweepAxis::N ? spec.grid[gi] : spec.fixed;
        const int d = spec.axis == SweepAxis::D ? spec.grid[gi] : spec.fixed;
        const ChainProblem p = generate_random(spec.kind, n, d, spec.seed + gi);
        const double oracle_cost = dp_solve(p).best_cost;
        for (Method method : spec.methods) {
            const Solution s = solve(p, spec.config, method);
            std::vector<double> times;
            for (int r = 0; r < spec.repeats; ++r)
                times.push_back(time_solve(p, spec.config, method, spec.min_run_seconds));

            BenchRecord rec;
            rec.kind = spec.kind;
            rec.n = n;
            rec.d = d;
            rec.method = method;
            rec.backend = spec.config.backend;
            rec.tau = spec.config.tau;
            rec.wall_time_seconds = median(times);
            rec.arithmetic_op_count = s.diagnostics.op_count;
            rec.cost = s.cost;
            rec.oracle_cost = oracle_cost;
            rec.ratio = cost_ratio(s.cost, oracle_cost);
            out.push_back(rec);
        }
    }
    return out;
}

std::vector<SlopeSummary> fit_slopes(const std::vector<BenchRecord>& records, SweepAxis axis)
{
    std::map<Method, std::pair<std::vector<double>, std::vector<double>>> by_method;
    for (const auto& r : records) {
        auto& [x, y] = by_method[r.method];
        x.push_back(axis == SweepAxis::N ? r.n : r.d);
        y.push_back(r.wall_time_seconds);
    }
    std::vector<SlopeSummary> out;
    for (const auto& [method, xy] : by_method)
        if (xy.first.size() >= 2)
            out.push_back({method, axis, loglog_slope(xy.first, xy.second)});
    return out;
}

std::string_view csv_header()
{
    return "kind,n,d,method,backend,tau,wall_time_seconds,arithmetic_op_count,cost,oracle_cost,ratio";
}

std::string to_csv_row(const BenchRecord& r)
{
    std::ostringstream os;
    os << to_string(r.kind) << ',' << r.n << ',' << r.d << ',' << to_string(r.method) << ','
       << to_string(r.backend) << ',' << format_double(r.tau) << ',' << format_double(r.wall_time_seconds)
       << ',' << r.arithmetic_op_count << ',' << format_double(r.cost) << ','
       << format_double(r.oracle_cost) << ',';
    if (r.ratio)
        os << format_double(*r.ratio);
    return os.str();
}

BenchRecord parse_csv_row(std::string_view line)
{
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else if (c != '\r' && c != '\n') {
            cur.push_back(c);
        }
    }
    f.push_back(cur);
    if (f.size() != 11)
        throw ParseError("bench row has " + std::to_string(f.size()) + " fields, expected 11");

    auto num = [](const std::string& s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw ParseError("bad number '" + s + "' in bench row");
        return v;
    };
    BenchRecord r;
    r.kind = parse_kind(f[0]);
    r.n = std::stoi(f[1]);
    r.d = std::stoi(f[2]);
    r.method = parse_method(f[3]);
    r.backend = parse_backend(f[4]);
    r.tau = num(f[5]);
    r.wall_time_seconds = num(f[6]);
    r.arithmetic_op_count = std::stoull(f[7]);
    r.cost = num(f[8]);
    r.oracle_cost = num(f[9]);
    if (!f[10].empty())
        r.ratio = num(f[10]);
    return r;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, SweepAxis axis)
{
    out << csv_header() << '\n';
    for (const auto& r : records)
        out << to_csv_row(r) << '\n';
    for (const auto& s : fit_slopes(records, axis))
        out << "# slope," << to_string(s.method) << ',' << (axis == SweepAxis::N ? "n" : "d") << ','
            << format_double(s.slope) << '\n';
}

} // namespace lcqp
