#include "doctest.h"

#include "seernf/error.hpp"
#include "seernf/text_io.hpp"

#include <filesystem>

using namespace seernf;
namespace fs = std::filesystem;

TEST_CASE("parse_double is strict about trailing garbage") {
    CHECK(parse_double("1.5") == 1.5);
    CHECK(parse_double("-3e2") == -300.0);
    CHECK(parse_double("  2.0") == 2.0);
    CHECK(parse_double("2.0  ") == 2.0);
    CHECK(!parse_double("1.5x"));
    CHECK(!parse_double("x1.5"));
    CHECK(!parse_double(""));
    CHECK(!parse_double("1e999")); // out of range
    CHECK(!parse_double("1.5 2.5"));
}

TEST_CASE("split_lines handles both line endings and no trailing newline") {
    const auto a = split_lines("x\ny\r\nz");
    REQUIRE(a.size() == 3);
    CHECK(a[0] == "x");
    CHECK(a[1] == "y");
    CHECK(a[2] == "z");
    CHECK(split_lines("").empty());
}

TEST_CASE("tokenize drops comments and blank lines") {
    const auto t = tokenize("  a b\tc  # trailing words");
    REQUIRE(t.size() == 3);
    CHECK(t[2] == "c");
    CHECK(tokenize("# full comment").empty());
    CHECK(tokenize("   ").empty());
}

TEST_CASE("split_csv trims fields and keeps empties") {
    const auto f = split_csv(" a , b ,, d");
    REQUIRE(f.size() == 4);
    CHECK(f[0] == "a");
    CHECK(f[2] == "");
    CHECK(f[3] == "d");
}

TEST_CASE("format_full round-trips doubles exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -0.393469})
        CHECK(parse_double(format_full(v)) == v);
}

TEST_CASE("atomic write replaces content and leaves no temp file") {
    const fs::path dir = fs::temp_directory_path() / "seernf_textio_test";
    fs::create_directories(dir);
    const fs::path p = dir / "out.txt";
    write_file_atomic(p, "first");
    write_file_atomic(p, "second");
    CHECK(read_file(p) == "second");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    fs::remove_all(dir);
}

TEST_CASE("read_file names the missing path") {
    CHECK_THROWS_AS(read_file("/nonexistent/seernf.txt"), IoError);
}
