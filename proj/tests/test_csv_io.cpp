#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "invstat/csv_io.hpp"
#include "invstat/rng.hpp"

using namespace invstat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / ("invstat_test_" + name);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("doubles survive the round trip through text", "[csv]") {
    rng_engine eng(1);
    for (int i = 0; i < 1000; ++i) {
        const double v = (uniform_unit(eng) - 0.5) * std::pow(10.0, uniform_below(eng, 12));
        CHECK(parse_double(format_double(v), "test") == v);
    }
    CHECK(parse_double("1e3", "test") == 1000.0);
    CHECK_THROWS_AS(parse_double("1.2.3", "test"), validation_error);
    CHECK_THROWS_AS(parse_double("abc", "test"), validation_error);
}

TEST_CASE("series round trip, dateless and dated", "[csv]") {
    TempDir dir("series_rt");
    rng_engine eng(2);
    std::vector<double> values;
    std::vector<std::string> dates;
    for (int i = 0; i < 50; ++i) {
        values.push_back(std::exp(2.0 * uniform_unit(eng) - 1.0));
        char buf[16];
        std::snprintf(buf, sizeof(buf), "2001-01-%02d", i + 1 > 31 ? 31 : i + 1);
        dates.push_back(std::string(buf) + (i > 30 ? "b" : ""));
    }
    const PriceSeries plain(values, "close");
    write_price_series(dir.file("plain.csv"), plain, {"a comment line"});
    const PriceSeries plain_back = read_price_series(dir.file("plain.csv"));
    CHECK(plain_back.values() == plain.values());
    CHECK(plain_back.label() == "close");
    CHECK(plain_back.dates().empty());

    const PriceSeries dated(values, "close", dates);
    write_price_series(dir.file("dated.csv"), dated);
    const PriceSeries dated_back = read_price_series(dir.file("dated.csv"));
    CHECK(dated_back.values() == dated.values());
    CHECK(dated_back.dates() == dates);
}

TEST_CASE("panel round trip", "[csv]") {
    TempDir dir("panel_rt");
    const PricePanel panel({"AA", "BB", "CC"},
                           {{1.0, 1.5, 2.0}, {3.0, 2.5, 2.0}, {10.0, 10.0, 10.5}});
    write_price_panel(dir.file("panel.csv"), panel);
    const PricePanel back = read_price_panel(dir.file("panel.csv"));
    REQUIRE(back.stocks() == 3);
    CHECK(back.names() == panel.names());
    for (std::size_t n = 0; n < 3; ++n) CHECK(back.row(n) == panel.row(n));
}

TEST_CASE("panel assembly intersects dates and reports drops", "[csv]") {
    TempDir dir("align");
    write_file(dir.file("a.csv"), "date,A\n2001-01-01,1.0\n2001-01-02,1.1\n2001-01-03,1.2\n"
                                  "2001-01-04,1.3\n2001-01-05,1.4\n");
    write_file(dir.file("b.csv"), "date,B\n2001-01-02,2.0\n2001-01-03,2.1\n2001-01-04,2.2\n"
                                  "2001-01-05,2.3\n2001-01-06,2.4\n");
    const auto [panel, alignment] =
        read_panel_from_series_files({dir.file("a.csv"), dir.file("b.csv")});
    CHECK(panel.stocks() == 2);
    CHECK(panel.size() == 4); // 01-02 .. 01-05
    CHECK(panel.dates().front() == "2001-01-02");
    CHECK(panel.dates().back() == "2001-01-05");
    CHECK(panel.row(0) == std::vector<double>{1.1, 1.2, 1.3, 1.4});
    CHECK(panel.row(1) == std::vector<double>{2.0, 2.1, 2.2, 2.3});
    REQUIRE(alignment.dropped_per_file.size() == 2);
    CHECK(alignment.dropped_per_file[0].second == 1);
    CHECK(alignment.dropped_per_file[1].second == 1);
}

TEST_CASE("panel assembly rejects misaligned inputs", "[csv]") {
    TempDir dir("misalign");
    write_file(dir.file("a.csv"), "A\n1.0\n1.1\n1.2\n");
    write_file(dir.file("b.csv"), "B\n2.0\n2.1\n");
    CHECK_THROWS_WITH(read_panel_from_series_files({dir.file("a.csv"), dir.file("b.csv")}),
                      Catch::Matchers::ContainsSubstring("equal length"));

    write_file(dir.file("c.csv"), "date,C\n2001-01-01,1.0\n2001-01-02,1.1\n");
    CHECK_THROWS_WITH(read_panel_from_series_files({dir.file("a.csv"), dir.file("c.csv")}),
                      Catch::Matchers::ContainsSubstring("carry dates"));

    write_file(dir.file("d.csv"), "date,D\n2002-01-01,1.0\n2002-01-02,1.1\n");
    CHECK_THROWS_WITH(read_panel_from_series_files({dir.file("c.csv"), dir.file("d.csv")}),
                      Catch::Matchers::ContainsSubstring("shared dates"));
}

TEST_CASE("malformed input is rejected with a line number", "[csv]") {
    TempDir dir("malformed");
    write_file(dir.file("missing.csv"), "date,close\n2001-01-01,1.0\n2001-01-02,\n");
    CHECK_THROWS_WITH(read_price_series(dir.file("missing.csv")),
                      Catch::Matchers::ContainsSubstring(":3:"));

    write_file(dir.file("ragged.csv"), "date,close\n2001-01-01,1.0\n2001-01-02\n");
    CHECK_THROWS_WITH(read_price_series(dir.file("ragged.csv")),
                      Catch::Matchers::ContainsSubstring(":3:"));

    write_file(dir.file("garbage.csv"), "close\n1.0\nnot-a-number\n");
    CHECK_THROWS_WITH(read_price_series(dir.file("garbage.csv")),
                      Catch::Matchers::ContainsSubstring("cannot parse"));

    write_file(dir.file("short.csv"), "close\n1.0\n");
    CHECK_THROWS_WITH(read_price_series(dir.file("short.csv")),
                      Catch::Matchers::ContainsSubstring("length >= 2"));

    CHECK_THROWS_WITH(read_price_series(dir.file("absent.csv")),
                      Catch::Matchers::ContainsSubstring("cannot open"));

    write_file(dir.file("nonpositive.csv"), "close\n1.0\n-3.0\n");
    CHECK_THROWS_AS(read_price_series(dir.file("nonpositive.csv")), validation_error);
}

TEST_CASE("comment lines before the header are skipped", "[csv]") {
    TempDir dir("comments");
    write_file(dir.file("c.csv"), "# invstat-config: {\"command\":\"simulate\"}\nclose\n1.0\n2.0\n");
    const PriceSeries s = read_price_series(dir.file("c.csv"));
    CHECK(s.size() == 2);
    CHECK(s[1] == 2.0);
}

TEST_CASE("series file with several value columns is rejected", "[csv]") {
    TempDir dir("width");
    write_file(dir.file("wide.csv"), "A,B\n1.0,2.0\n1.1,2.1\n");
    CHECK_THROWS_WITH(read_price_series(dir.file("wide.csv")),
                      Catch::Matchers::ContainsSubstring("single value column"));
    CHECK_NOTHROW(read_price_panel(dir.file("wide.csv")));
    write_file(dir.file("narrow.csv"), "date,A\n2001-01-01,1.0\n2001-01-02,1.1\n");
    CHECK_THROWS_WITH(read_price_panel(dir.file("narrow.csv")),
                      Catch::Matchers::ContainsSubstring("at least 2 stock columns"));
}
