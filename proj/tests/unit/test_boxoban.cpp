#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "soko/boxoban.hpp"

using namespace soko;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "drcplan_boxoban_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("a file with two blocks yields two levels in order") {
    std::string text =
        "; 0\n#####\n#@$.#\n#####\n"
        "; 1\n######\n#@$ .#\n######\n";
    auto levels = parse_level_file(text);
    REQUIRE(levels.size() == 2);
    CHECK(levels[0].id == 0);
    CHECK(levels[1].id == 1);
    CHECK(levels[1].width == 6);
}

TEST_CASE("bare grids without headers are accepted") {
    auto levels = parse_level_file("#####\n#@$.#\n#####\n\n#####\n#.$@#\n#####\n");
    REQUIRE(levels.size() == 2);
    CHECK(!levels[0].id.has_value());
}

TEST_CASE("malformed blocks are reported with file and line") {
    CHECK_THROWS_WITH_AS(parse_level_file("; 0\n#####\n#@@.#\n#####\n", "bad.txt"),
                         doctest::Contains("bad.txt:1"), parse_error);
}

TEST_CASE("an empty directory yields an empty sequence") {
    TempDir dir;
    CHECK(load_boxoban_dir(dir.path.string()).empty());
}

TEST_CASE("directory loading preserves per-file ordering") {
    TempDir dir;
    {
        std::ofstream a(dir.path / "000.txt");
        a << "; 0\n#####\n#@$.#\n#####\n; 1\n#####\n#.$@#\n#####\n";
        std::ofstream b(dir.path / "001.txt");
        b << "; 2\n######\n#@$ .#\n######\n";
    }
    auto levels = load_boxoban_dir(dir.path.string());
    REQUIRE(levels.size() == 3);
    CHECK(levels[0].id == 0);
    CHECK(levels[1].id == 1);
    CHECK(levels[2].id == 2);
}

TEST_CASE("a generated 1000-level corpus parses with all invariants intact") {
    // deterministic corpus: corridors of varying shapes written as text
    TempDir dir;
    std::ofstream out(dir.path / "corpus.txt");
    for (int i = 0; i < 1000; ++i) {
        int w = 5 + (i % 7);
        std::string row(static_cast<size_t>(w), ' ');
        row.front() = '#';
        row.back() = '#';
        row[1] = '@';
        row[2] = '$';
        row[static_cast<size_t>(w - 2)] = '.';
        out << "; " << i << "\n"
            << std::string(static_cast<size_t>(w), '#') << "\n"
            << row << "\n"
            << std::string(static_cast<size_t>(w), '#') << "\n";
    }
    out.close();
    auto levels = load_boxoban_dir(dir.path.string());
    REQUIRE(levels.size() == 1000);
    for (const auto& lv : levels) {
        CHECK(lv.box_count() >= 1);
        CHECK(lv.box_count() == lv.target_count());
        CHECK(lv.in_bounds(lv.agent_pos));
    }
}
