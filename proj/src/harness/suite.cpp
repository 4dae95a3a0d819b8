#include "harness/suite.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "soko/boxoban.hpp"
#include "soko/generate.hpp"

namespace harness {

namespace {

using soko::CaseKind;
using soko::Level;
using soko::parse_level;

Level from_rows(const std::vector<std::string>& rows) {
    std::string text;
    for (const auto& r : rows) text += r + "\n";
    return parse_level(text);
}

// corridor variants: the generator covers rightward pushes, these cover the
// other directions
Level corridor_left(int n) {
    std::string row(static_cast<size_t>(n), ' ');
    row.front() = '#';
    row.back() = '#';
    row[1] = '.';
    row[static_cast<size_t>(n - 3)] = '$';
    row[static_cast<size_t>(n - 2)] = '@';
    return from_rows({std::string(static_cast<size_t>(n), '#'), row,
                      std::string(static_cast<size_t>(n), '#')});
}

Level corridor_vertical(int n, bool down) {
    std::vector<std::string> rows(static_cast<size_t>(n), "###");
    for (int r = 1; r < n - 1; ++r) rows[static_cast<size_t>(r)] = "# #";
    if (down) {
        rows[1][1] = '@';
        rows[2][1] = '$';
        rows[static_cast<size_t>(n - 2)][1] = '.';
    } else {
        rows[static_cast<size_t>(n - 2)][1] = '@';
        rows[static_cast<size_t>(n - 3)][1] = '$';
        rows[1][1] = '.';
    }
    return from_rows(rows);
}

// L-turn: horizontal leg on row 2, vertical leg down the far column, with a
// two-square pocket above the corner so the agent can get behind the box
Level turn_level(int horiz, int vert, bool push_right) {
    int W = horiz + 4;
    int H = vert + 4;
    std::vector<std::string> rows(static_cast<size_t>(H),
                                  std::string(static_cast<size_t>(W), '#'));
    int corner = push_right ? W - 3 : 2;
    // horizontal leg
    for (int c = 1; c <= W - 3; ++c) rows[2][static_cast<size_t>(c)] = ' ';
    if (!push_right)
        for (int c = 2; c < W - 1; ++c) rows[2][static_cast<size_t>(c)] = ' ';
    // pocket above the corner
    rows[1][static_cast<size_t>(corner)] = ' ';
    rows[1][static_cast<size_t>(corner + (push_right ? -1 : 1))] = ' ';
    // vertical leg
    for (int r = 2; r <= H - 2; ++r) rows[static_cast<size_t>(r)][static_cast<size_t>(corner)] = ' ';
    if (push_right) {
        rows[2][1] = '@';
        rows[2][2] = '$';
    } else {
        rows[2][static_cast<size_t>(W - 2)] = '@';
        rows[2][static_cast<size_t>(W - 3)] = '$';
    }
    rows[static_cast<size_t>(H - 2)][static_cast<size_t>(corner)] = '.';
    return from_rows(rows);
}

// two boxes in one row, solved left to right
Level sequential_two_box(int n) {
    std::string row(static_cast<size_t>(n), ' ');
    row.front() = '#';
    row.back() = '#';
    int mid = n / 2;
    row[1] = '@';
    row[2] = '$';
    row[static_cast<size_t>(mid)] = '.';
    row[static_cast<size_t>(mid + 1)] = '$';
    row[static_cast<size_t>(n - 2)] = '.';
    return from_rows({std::string(static_cast<size_t>(n), '#'), row,
                      std::string(static_cast<size_t>(n), '#')});
}

// agent between two boxes pushed to opposite ends
Level push_both(int n) {
    std::string row(static_cast<size_t>(n), ' ');
    row.front() = '#';
    row.back() = '#';
    int mid = n / 2;
    row[1] = '.';
    row[static_cast<size_t>(mid - 1)] = '$';
    row[static_cast<size_t>(mid)] = '@';
    row[static_cast<size_t>(mid + 1)] = '$';
    row[static_cast<size_t>(n - 2)] = '.';
    return from_rows({std::string(static_cast<size_t>(n), '#'), row,
                      std::string(static_cast<size_t>(n), '#')});
}

}  // namespace

std::vector<Level> suite_levels() {
    std::vector<Level> levels;
    auto add = [&](Level lv) {
        lv.id = static_cast<long>(levels.size());
        levels.push_back(std::move(lv));
    };

    for (int n = 6; n <= 13; ++n) add(soko::generate_case_level(CaseKind::Corridor, n));  // 8
    for (int n = 7; n <= 10; ++n) add(corridor_left(n));                                  // 4
    for (int n = 7; n <= 10; ++n) add(corridor_vertical(n, true));                        // 4
    for (int n = 7; n <= 10; ++n) add(corridor_vertical(n, false));                       // 4
    for (int h : {4, 6})
        for (int v : {3, 5}) {
            add(turn_level(h, v, true));
            add(turn_level(h, v, false));
        }                                                                                 // 8
    for (int n : {7, 9, 11}) add(soko::generate_case_level(CaseKind::TwoPaths, n));       // 3
    for (int n = 8; n <= 12; ++n) add(soko::generate_case_level(CaseKind::Zigzag, n));    // 5
    add(soko::generate_case_level(CaseKind::Backtrack, 20));                              // 1
    for (int n = 10; n <= 15; ++n) add(sequential_two_box(n));                            // 6
    for (int n = 7; n <= 13; ++n) add(push_both(n));                                      // 7
    return levels;  // 50 total
}

void write_suite(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto levels = suite_levels();
    for (size_t i = 0; i < levels.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "level_%02zu.txt", i);
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write suite level " + std::string(name));
        out << soko::to_text(levels[i]);
    }
}

std::vector<Level> compile_validation_levels() {
    std::vector<Level> levels;
    auto add = [&](Level lv) {
        lv.id = static_cast<long>(levels.size());
        levels.push_back(std::move(lv));
    };
    // straight chains, all four directions
    add(soko::generate_case_level(CaseKind::Corridor, 8));
    add(soko::generate_case_level(CaseKind::Corridor, 10));
    add(corridor_left(8));
    add(corridor_vertical(8, true));
    add(corridor_vertical(8, false));
    // wall-stop: box against the far wall past the target
    add(from_rows({"########", "#@$ .  #", "########"}));
    add(from_rows({"#####", "#   #", "#@$ #", "# . #", "#   #", "#####"}));
    // turns
    add(turn_level(4, 3, true));
    add(turn_level(4, 3, false));
    add(turn_level(5, 4, true));
    // conflicts: two equal-length options
    add(soko::generate_case_level(CaseKind::TwoPaths, 7));
    add(soko::generate_case_level(CaseKind::TwoPaths, 9));
    return levels;  // 12 total
}

std::vector<Level> load_level_set(const std::string& spec) {
    namespace fs = std::filesystem;
    if (spec == "suite") return suite_levels();
    if (spec == "compile") return compile_validation_levels();
    if (spec == "two_paths") return {soko::generate_case_level(CaseKind::TwoPaths, 9)};
    if (spec == "backtrack") return {soko::generate_case_level(CaseKind::Backtrack, 20)};
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon);
        int size = std::stoi(spec.substr(colon + 1));
        if (kind == "zigzag") return {soko::generate_case_level(CaseKind::Zigzag, size)};
        if (kind == "corridor") return {soko::generate_case_level(CaseKind::Corridor, size)};
        if (kind == "two_paths") return {soko::generate_case_level(CaseKind::TwoPaths, size)};
        if (kind == "backtrack") return {soko::generate_case_level(CaseKind::Backtrack, size)};
        throw std::invalid_argument("unknown level-set kind: " + kind);
    }
    if (fs::is_directory(spec)) return soko::load_boxoban_dir(spec);
    if (fs::is_regular_file(spec)) {
        std::ifstream in(spec);
        std::ostringstream buf;
        buf << in.rdbuf();
        return soko::parse_level_file(buf.str(), spec);
    }
    throw std::invalid_argument("cannot resolve level set: " + spec);
}

}  // namespace harness
