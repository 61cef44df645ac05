#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lcqp/problem.hpp"
#include "lcqp/tn_solver.hpp"

namespace lcqp
{

struct BenchRecord
{
    ProblemKind kind = ProblemKind::Qudo;
    int n = 0;
    int d = 0;
    Method method = Method::Reuse;
    Backend backend = Backend::LogDomain;
    double tau = 0.0;
    double wall_time_seconds = 0.0; // median over repeats
    std::uint64_t arithmetic_op_count = 0;
    double cost = 0.0;
    double oracle_cost = 0.0;
    std::optional<double> ratio; // cost / oracle_cost, absent when oracle_cost == 0
};

enum class SweepAxis
{
    N,
    D
};

struct SweepSpec
{
    SweepAxis axis = SweepAxis::N;
    std::vector<int> grid;
    int fixed = 4; // D for an N sweep, N for a D sweep
    ProblemKind kind = ProblemKind::Qudo;
    std::vector<Method> methods{Method::Reuse};
    SolverConfig config;
    std::uint64_t seed = 0;
    int repeats = 3;
    // each timed repeat loops the solve until at least this long has passed
    double min_run_seconds = 0.02;
};

struct SlopeSummary
{
    Method method = Method::Reuse;
    SweepAxis axis = SweepAxis::N;
    double slope = 0.0;
};

std::optional<double> cost_ratio(double cost, double oracle_cost);

// Integer points from lo to hi (inclusive), evenly spaced in log, deduplicated.
std::vector<int> geometric_grid(int lo, int hi, int points);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);

std::vector<BenchRecord> run_sweep(const SweepSpec& spec);

std::vector<SlopeSummary> fit_slopes(const std::vector<BenchRecord>& records, SweepAxis axis);

// Header row, one row per record, then one "# slope,<method>,<axis>,<value>"
// comment line per method.
std::string_view csv_header();
std::string to_csv_row(const BenchRecord& r);
BenchRecord parse_csv_row(std::string_view line);
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, SweepAxis axis);

} // namespace lcqp
