#include "econet/config.hpp"
#include "econet/csv.hpp"

#include "econet/errors.hpp"
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace econet;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("econet_io_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("config round-trips through the key-value format") {
    RunConfig cfg;
    cfg.dynamics.theta = 7.25;
    cfg.dynamics.steps = 1234;
    cfg.dynamics.growth.n0 = 17;
    cfg.dynamics.growth.pa_offset = 0.1; // not exactly representable
    cfg.dynamics.new_agent_probability = 1.0 / 3.0;
    cfg.analysis.renorm_scales = {2, 3, 5, 8};
    cfg.analysis.var_alphas = {0.9, 0.975};
    cfg.analysis.tail_fraction = 0.07;
    cfg.out_dir = "some/dir";
    cfg.seed = 987654321;

    const RunConfig back = parse_config_text(to_kv_text(cfg), "round-trip");
    CHECK(back == cfg);
}

TEST_CASE("config round-trips through JSON") {
    RunConfig cfg;
    cfg.dynamics.theta = 3.5;
    cfg.dynamics.check_conservation = true;
    cfg.analysis.degree_mode = "out";
    const RunConfig back = config_from_json(config_to_json(cfg), "json-round-trip");
    CHECK(back == cfg);
}

TEST_CASE("JSON config text is detected and parsed") {
    const std::string text = R"({"dynamics": {"theta": 2.5}, "seed": 42})";
    const RunConfig cfg = parse_config_text(text, "inline");
    CHECK(cfg.dynamics.theta == 2.5);
    CHECK(cfg.seed == 42);
}

TEST_CASE("unknown config keys are rejected by name") {
    try {
        parse_config_text("dynamics.thetta = 3\n", "typo.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("dynamics.thetta") != std::string::npos);
    }
    try {
        parse_config_text(R"({"dynamix": {}})", "typo.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("dynamix") != std::string::npos);
    }
}

TEST_CASE("invalid values name the offending key") {
    try {
        parse_config_text("dynamics.theta = -1\n", "bad.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("theta") != std::string::npos);
    }
}

TEST_CASE("comments and blank lines are tolerated") {
    const RunConfig cfg = parse_config_text("# a comment\n\nseed = 5 # trailing\n", "c.cfg");
    CHECK(cfg.seed == 5);
}

TEST_CASE("edge list round-trips through the snapshot format") {
    TempDir dir;
    GrowthConfig g;
    g.n0 = 1;
    TradeNetwork net(g, 1);
    for (int i = 0; i < 5; ++i)
        net.add_agent();
    net.add_link(0, 1, 1.0);
    net.add_link(1, 2, 2.5);
    net.add_link(5, 0, 1.0);

    const std::string path = dir.file("net.edges");
    write_edge_list(path, net, 77);
    const TradeNetwork back = load_edge_list(path);

    CHECK(back.agent_count() == net.agent_count());
    CHECK(back.link_count() == net.link_count());
    CHECK(back.has_link(0, 1));
    CHECK(back.has_link(1, 2));
    CHECK(back.has_link(5, 0));
    CHECK(back.agent(1).out[0].weight == 2.5);
}

TEST_CASE("edge list loader reports bad lines") {
    TempDir dir;
    const std::string path = dir.file("bad.edges");
    write_text_file(path, "0\t1\n");
    CHECK_THROWS_AS(load_edge_list(path), ParseError);
    write_text_file(path, "0\t0\t1.0\n");
    CHECK_THROWS_AS(load_edge_list(path), ParseError); // self-loop
    write_text_file(path, "0\t1\t1.0\n0\t1\t1.0\n");
    CHECK_THROWS_AS(load_edge_list(path), ParseError); // duplicate
    CHECK_THROWS_AS(load_edge_list(dir.file("missing.edges")), IoError);
}

TEST_CASE("returns CSV writer and column reader round-trip") {
    TempDir dir;
    const std::string path = dir.file("returns.csv");
    const std::vector<double> returns{0.25, -0.125, std::nan(""), 0.5};
    write_returns_csv(path, returns);

    const std::vector<double> back = read_column_csv(path, "log_return");
    REQUIRE(back.size() == 3); // the gap row is omitted
    CHECK(back[0] == 0.25);
    CHECK(back[1] == -0.125);
    CHECK(back[2] == 0.5);

    CHECK_THROWS_AS(read_column_csv(path, "no_such_column"), ParseError);
}

TEST_CASE("series reader validates dates and values") {
    TempDir dir;
    const std::string path = dir.file("series.csv");

    SUBCASE("happy path") {
        write_text_file(path, "date,value\n2020-01-01,100\n2020-01-02,110\n2020-01-03,99\n");
        const ExternalSeries s = read_series_csv(path, "date", "value", "demo");
        REQUIRE(s.observations.size() == 3);
        CHECK(s.observations[0].first == "2020-01-01");
        CHECK(s.observations[2].second == 99.0);
    }
    SUBCASE("duplicate dates are rejected with the row named") {
        write_text_file(path, "date,value\n2020-01-01,100\n2020-01-01,110\n");
        try {
            read_series_csv(path, "date", "value", "demo");
            FAIL("expected DataValidationError");
        } catch (const DataValidationError& e) {
            CHECK(std::string(e.what()).find("row 3") != std::string::npos);
        }
    }
    SUBCASE("decreasing dates are rejected") {
        write_text_file(path, "date,value\n2020-01-02,100\n2020-01-01,110\n");
        CHECK_THROWS_AS(read_series_csv(path, "date", "value", "demo"), DataValidationError);
    }
    SUBCASE("nonpositive values are rejected with the row named") {
        write_text_file(path, "date,value\n2020-01-01,100\n2020-01-02,0\n");
        try {
            read_series_csv(path, "date", "value", "demo");
            FAIL("expected DataValidationError");
        } catch (const DataValidationError& e) {
            CHECK(std::string(e.what()).find("row 3") != std::string::npos);
        }
    }
    SUBCASE("malformed dates are rejected") {
        write_text_file(path, "date,value\n01/02/2020,100\n2020-01-03,110\n");
        CHECK_THROWS_AS(read_series_csv(path, "date", "value", "demo"), DataValidationError);
    }
    SUBCASE("alternative column names") {
        write_text_file(path, "day,close\n2020-01-01,100\n2020-01-02,110\n");
        const ExternalSeries s = read_series_csv(path, "day", "close", "demo");
        CHECK(s.observations.size() == 2);
        CHECK_THROWS_AS(read_series_csv(path, "date", "value", "demo"), ParseError);
    }
}

TEST_CASE("floats in data files carry 12 significant digits") {
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(3.0) == "3");
    CHECK(format_double(-0.1) == "-0.1");
}
