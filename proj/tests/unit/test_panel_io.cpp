#include "synapse/panel_io.hpp"

#include "synapse/synthetic_bench.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace synapse;
namespace fs = std::filesystem;

namespace {

const fs::path fixture_dir = SYNAPSE_FIXTURE_DIR;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("synapse_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const char* minimal_record =
    R"({"schema_version":1,"series_id":"s","seasonality":1,"horizon":1,"levels":[0.5],)"
    R"("context":[1,2],"actuals":[3],"models":[{"name":"A","quantiles":[[3]]}]})";

} // namespace

TEST_CASE("bundled fixture loads") {
    const auto docs = io::load_panels(fixture_dir / "three_panels.jsonl");
    REQUIRE(docs.size() == 3);
    for (const auto& d : docs) CHECK(d.panel.model_count() == 2);
    CHECK(docs[0].panel.series_id() == "p1");
    CHECK(docs[1].meta.horizon_class == HorizonClass::medium_term);
    CHECK(docs[2].meta.domain == "retail");
    CHECK(docs[1].meta.dataset_key() == "energy/fixture");
    REQUIRE(docs[1].backtest.size() == 2);
    CHECK(docs[1].backtest[0][1].median() == 4.0);
    CHECK(docs[0].backtest.empty());
}

TEST_CASE("minimal record and defaults") {
    const auto raw = io::parse_panel_record(minimal_record);
    CHECK(raw.meta.domain == "unknown");
    CHECK(raw.meta.frequency == "unknown");
    CHECK(raw.panel.levels == std::vector<double>{0.5});
    CHECK(validate_document(raw).panel.horizon() == 1);
}

TEST_CASE("strict mode rejects unknown fields") {
    std::string text = minimal_record;
    text.insert(1, R"("colour":"blue",)");
    CHECK_THROWS_AS(io::parse_panel_record(text, true), ParseError);
    CHECK_NOTHROW(io::parse_panel_record(text, false));

    std::string nested = minimal_record;
    nested.replace(nested.find(R"("name":"A")"), 10, R"("name":"A","extra":1)");
    CHECK_THROWS_AS(io::parse_panel_record(nested, true), ParseError);
}

TEST_CASE("parse errors carry file and line") {
    try {
        io::parse_panel_record("{not json", true, "broken.jsonl", 7);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.file() == "broken.jsonl");
        CHECK(e.line() == 7);
        CHECK(std::string(e.what()).find("broken.jsonl") != std::string::npos);
    }
    std::string missing = minimal_record;
    missing.replace(missing.find(R"("series_id":"s",)"), 16, "");
    CHECK_THROWS_AS(io::parse_panel_record(missing), ParseError);
    std::string wrong_type = minimal_record;
    wrong_type.replace(wrong_type.find(R"("horizon":1)"), 11, R"("horizon":"one")");
    CHECK_THROWS_AS(io::parse_panel_record(wrong_type), ParseError);
}

TEST_CASE("schema version and partial backtests") {
    std::string v2 = minimal_record;
    v2.replace(v2.find(R"("schema_version":1)"), 18, R"("schema_version":2)");
    CHECK_THROWS_AS(io::parse_panel_record(v2), SchemaVersionMismatch);

    const std::string partial =
        R"({"schema_version":1,"series_id":"s","seasonality":1,"horizon":1,"levels":[0.5],"context":[1,2],)"
        R"("actuals":[3],"models":[{"name":"A","quantiles":[[3]],"backtest":[[2]]},{"name":"B","quantiles":[[4]]}]})";
    CHECK_THROWS_AS(io::parse_panel_record(partial), AlignmentMismatch);
}

TEST_CASE("records round trip bit-exactly") {
    auto docs = synthetic::build_benchmark_suite(25, 8);
    for (const auto& doc : docs) {
        const auto raw = doc.to_raw();
        REQUIRE(io::parse_panel_record(io::format_panel_record(raw)) == raw);
    }
    RawPanelDocument awkward = io::parse_panel_record(minimal_record);
    awkward.panel.context = {0.1 + 0.2, 1e-310, -0.0, 123456789.123456789, 5e300};
    awkward.panel.actuals.reset();
    const auto back = io::parse_panel_record(io::format_panel_record(awkward));
    CHECK(back == awkward);
    CHECK(std::signbit(back.panel.context[2]));
}

TEST_CASE("loading files and directories") {
    TempDir dir("io");
    CHECK(io::load_panels(dir.path).empty());

    const auto suite = synthetic::build_benchmark_suite(4, 1);
    io::write_panels(dir.path / "b.jsonl", {suite[2], suite[3]});
    io::write_panels(dir.path / "a.jsonl", {suite[0], suite[1]});
    {
        std::ofstream ignored(dir.path / "notes.txt");
        ignored << "not a panel\n";
        std::ofstream blank(dir.path / "c.jsonl");
        blank << "\n   \n";
    }
    const auto loaded = io::load_panels(dir.path);
    REQUIRE(loaded.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(loaded[i].to_raw() == suite[i].to_raw());

    {
        std::ofstream corrupt(dir.path / "d.jsonl");
        corrupt << minimal_record << "\n{\"schema_version\":1,\n";
    }
    try {
        io::load_panels(dir.path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(fs::path(e.file()).filename() == "d.jsonl");
        CHECK(e.line() == 2);
    }

    CHECK_THROWS_AS(io::load_panels(dir.path / "missing"), IoError);
    CHECK_THROWS_AS(io::load_panels(fixture_dir / "nonmonotone.jsonl"), NonMonotoneQuantiles);
}
