#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ksigma/experiments.hpp"
#include "ksigma/report.hpp"

using namespace ksigma;

namespace {

std::size_t count_lines(const std::string& s) {
    std::size_t lines = 0;
    for (const char c : s)
        if (c == '\n') ++lines;
    return lines;
}

OutlierEstimate fake_point(std::size_t n, double p) {
    OutlierEstimate e;
    e.n = n;
    e.p_hat = p;
    return e;
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("the figure n grid is 1,000..25,000 step 2,000") {
    const auto grid = figure_n_grid();
    REQUIRE(grid.size() == 13);
    CHECK(grid.front() == 1000);
    CHECK(grid[1] == 3000);
    CHECK(grid.back() == 25000);
}

TEST_CASE("sustained crossover rule") {
    const std::vector<std::size_t> ns{1000, 3000, 5000, 7000};
    std::vector<OutlierEstimate> ref;
    for (const std::size_t n : ns) ref.push_back(fake_point(n, 0.5));

    // crosses at 5000 and stays below
    std::vector<OutlierEstimate> a{fake_point(1000, 0.9), fake_point(3000, 0.6),
                                   fake_point(5000, 0.4), fake_point(7000, 0.3)};
    CHECK(sustained_crossover_n(a, ref) == 5000);

    // dips below at 3000 but pops back: only the final crossing counts
    std::vector<OutlierEstimate> b{fake_point(1000, 0.9), fake_point(3000, 0.4),
                                   fake_point(5000, 0.6), fake_point(7000, 0.3)};
    CHECK(sustained_crossover_n(b, ref) == 7000);

    // never crosses
    std::vector<OutlierEstimate> c{fake_point(1000, 0.9), fake_point(3000, 0.8),
                                   fake_point(5000, 0.7), fake_point(7000, 0.6)};
    CHECK(sustained_crossover_n(c, ref) == 0);

    // below everywhere: crossover at the first point
    std::vector<OutlierEstimate> d{fake_point(1000, 0.1), fake_point(3000, 0.1),
                                   fake_point(5000, 0.1), fake_point(7000, 0.1)};
    CHECK(sustained_crossover_n(d, ref) == 1000);
}

TEST_CASE("make_check semantics") {
    CHECK(make_check("x", 1.0, 0.5, 1.5).pass);
    CHECK(make_check("x", 0.5, 0.5, 1.5).pass);
    CHECK(!make_check("x", 0.49, 0.5, 1.5).pass);
    CHECK(!make_check("x", std::numeric_limits<double>::quiet_NaN(), 0.0, 1.0).pass);
}

TEST_CASE("experiments are bit-reproducible") {
    ExperimentOptions opt;
    opt.m = 10;
    opt.seed = 4242;
    const ExperimentResult a = run_claims_table(opt);
    const ExperimentResult b = run_claims_table(opt);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i)
        CHECK(a.checks[i].observed == b.checks[i].observed);
    CHECK(to_csv(a) == to_csv(b));
}

TEST_CASE("curve experiments: CSV and SVG shape") {
    ExperimentOptions opt;
    opt.m = 4;
    opt.seed = 7;
    const ExperimentResult fig = run_figure1(opt);
    CHECK(fig.kind == ResultKind::curve);
    REQUIRE(fig.series.size() == 2);
    CHECK(fig.series[0].points.size() == 13);
    CHECK(fig.series[1].points.size() == 13);

    const std::string csv = to_csv(fig);
    CHECK(count_lines(csv) == 1 + 26 + 1); // header + points + crossover row
    CHECK(csv.find("experiment_id,series,n,p_hat,std_err") == 0);
    CHECK(csv.find("fig1,crossover,") != std::string::npos);
    CHECK(csv.find("\r") == std::string::npos);

    const std::string svg = to_svg(fig);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("surface experiment: CSV shape and spot checks") {
    const std::vector<double> alphas{1.3, 1.6};
    const std::vector<double> lambdas{1.0, 2.0, 3.0};
    const ExperimentResult fig = run_figure3(alphas, lambdas, 3.0, 11, 2);
    CHECK(fig.kind == ResultKind::surface);
    REQUIRE(fig.series.size() == 1);
    CHECK(fig.series[0].points.size() == 6);
    const std::string csv = to_csv(fig);
    CHECK(count_lines(csv) == 7);
    CHECK(csv.find("experiment_id,alpha,lambda,p_limit,std_err") == 0);
    const std::string svg = to_svg(fig);
    CHECK(svg.find("<rect") != std::string::npos);
    // interior cells of the surface stay well below the observed range
    for (const SeriesPoint& p : fig.series[0].points) CHECK(p.y < 0.009);
}

TEST_CASE("summary json is flat and carries every check") {
    ExperimentOptions opt;
    opt.m = 8;
    opt.seed = 3;
    const ExperimentResult claims = run_claims_table(opt);
    const std::string json = summary_json(std::span<const ExperimentResult>(&claims, 1));
    CHECK(json.find("\"claims.gaussian_limit.pass\"") != std::string::npos);
    CHECK(json.find("\"claims.all_pass\"") != std::string::npos);
    CHECK(json.find("\"all_pass\"") != std::string::npos);
}

TEST_CASE("table results render as csv only") {
    ExperimentOptions opt;
    opt.m = 8;
    opt.seed = 3;
    const ExperimentResult claims = run_claims_table(opt);
    CHECK(to_svg(claims).empty());
    const std::string csv = to_csv(claims);
    CHECK(csv.find("experiment_id,check,observed,lo,hi,pass") == 0);
    CHECK(count_lines(csv) == 1 + claims.checks.size());
}

TEST_CASE("write_text_file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "ksigma_report_test.csv";
    write_text_file(path, "a,b\n1,2\n");
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "a,b\n1,2\n");
    std::filesystem::remove(path);
}

} // TEST_SUITE
