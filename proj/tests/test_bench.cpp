#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lcqp/bench.hpp"

using namespace lcqp;

TEST_CASE("geometric grid")
{
    const auto g = geometric_grid(64, 4096, 13);
    CHECK(g.front() == 64);
    CHECK(g.back() == 4096);
    CHECK(g.size() == 13);
    CHECK(g[2] == 128);
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK(geometric_grid(4, 4, 5) == std::vector<int>{4});
    CHECK_THROWS(geometric_grid(0, 4, 3));
}

TEST_CASE("log-log slope of synthetic power laws")
{
    std::vector<double> x, y1, y2;
    for (int i = 1; i <= 10; ++i) {
        x.push_back(i * 10.0);
        y1.push_back(3e-6 * i * 10.0);
        y2.push_back(7e-9 * std::pow(i * 10.0, 2.0));
    }
    CHECK(loglog_slope(x, y1) == doctest::Approx(1.0));
    CHECK(loglog_slope(x, y2) == doctest::Approx(2.0));
    CHECK_THROWS(loglog_slope({1.0}, {1.0}));
}

TEST_CASE("median")
{
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("cost ratio")
{
    CHECK(*cost_ratio(-2.0, -2.0) == 1.0);
    CHECK(*cost_ratio(-1.0, -2.0) == 0.5);
    CHECK_FALSE(cost_ratio(1.0, 0.0).has_value());
}

TEST_CASE("csv rows round trip")
{
    BenchRecord r;
    r.kind = ProblemKind::TensorQudo;
    r.n = 128;
    r.d = 4;
    r.method = Method::Backtrack;
    r.tau = 50.0;
    r.wall_time_seconds = 1.2345678901234e-5;
    r.arithmetic_op_count = 2540;
    r.cost = -1.0 / 3.0;
    r.oracle_cost = -0.7;
    r.ratio = r.cost / r.oracle_cost;
    const auto back = parse_csv_row(to_csv_row(r));
    CHECK(back.kind == r.kind);
    CHECK(back.n == r.n);
    CHECK(back.method == r.method);
    CHECK(back.backend == r.backend);
    CHECK(back.wall_time_seconds == r.wall_time_seconds);
    CHECK(back.arithmetic_op_count == r.arithmetic_op_count);
    CHECK(back.cost == r.cost);
    CHECK(back.ratio == r.ratio);

    r.ratio.reset();
    CHECK_FALSE(parse_csv_row(to_csv_row(r)).ratio.has_value());
    CHECK_THROWS(parse_csv_row("qudo,1,2"));
}

TEST_CASE("small sweep")
{
    SweepSpec spec;
    spec.grid = {8, 16, 32};
    spec.fixed = 4;
    spec.methods = {Method::Reuse, Method::Backtrack};
    spec.min_run_seconds = 0.0;
    const auto records = run_sweep(spec);
    REQUIRE(records.size() == 6);
    for (const auto& r : records) {
        CHECK(r.wall_time_seconds > 0.0);
        CHECK(r.ratio.has_value());
        if (r.method == Method::Reuse)
            CHECK(r.arithmetic_op_count == static_cast<std::uint64_t>((r.n - 1) * 16 + r.n * 4));
    }
    std::ostringstream os;
    write_csv(os, records, SweepAxis::N);
    const std::string text = os.str();
    CHECK(text.rfind(csv_header(), 0) == 0);
    CHECK(text.find("# slope,reuse,n,") != std::string::npos);

    spec.repeats = 2;
    CHECK_THROWS(run_sweep(spec));
}
