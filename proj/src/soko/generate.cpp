#include "soko/generate.hpp"

#include <stdexcept>
#include <string>

namespace soko {

namespace {

struct Canvas {
    int n;
    std::vector<std::string> rows;
    explicit Canvas(int height, int width) : n(height) {
        rows.assign(height, std::string(width, '#'));
    }
    void floor(int r, int c) { rows[r][c] = ' '; }
    void put(int r, int c, char ch) { rows[r][c] = ch; }
    Level finish() const {
        std::string text;
        for (const auto& row : rows) text += row + "\n";
        return parse_level(text);
    }
};

Level make_corridor(int n) {
    Canvas cv(3, n);
    for (int c = 1; c < n - 1; ++c) cv.floor(1, c);
    cv.put(1, 1, '@');
    cv.put(1, 2, '$');
    cv.put(1, n - 2, '.');
    return cv.finish();
}

Level make_two_paths(int n) {
    Canvas cv(n, n);
    for (int r = 1; r < n - 1; ++r)
        for (int c = 1; c < n - 1; ++c) cv.floor(r, c);
    cv.put(1, 1, '@');
    cv.put(2, 2, '$');
    cv.put(n - 3, n - 3, '.');
    return cv.finish();
}

Level make_zigzag(int n) {
    Canvas cv(n, n);
    int alleys = 0;
    for (int r = 1; r <= n - 2; r += 2) {
        for (int c = 1; c <= n - 2; ++c) cv.floor(r, c);
        ++alleys;
    }
    // Connections between consecutive alleys alternate ends.
    for (int a = 0; a + 1 < alleys; ++a) {
        int sep_row = 2 + 2 * a;
        int col = (a % 2 == 0) ? n - 2 : 1;
        cv.floor(sep_row, col);
    }
    cv.put(1, 1, '@');
    int last_row = 1 + 2 * (alleys - 1);
    bool rightward = (alleys - 1) % 2 == 0;
    if (rightward) {
        cv.put(last_row, n - 4, '$');
        cv.put(last_row, n - 3, '.');
    } else {
        cv.put(last_row, 3, '$');
        cv.put(last_row, 2, '.');
    }
    return cv.finish();
}

Level make_backtrack(int n) {
    Canvas cv(n, n);
    // Agent run row and box row.
    for (int c = 1; c <= n - 3; ++c) cv.floor(1, c);
    for (int c = 1; c <= n - 3; ++c) cv.floor(2, c);
    // Trunk column down to the target row.
    for (int r = 2; r <= n - 3; ++r) cv.floor(r, n - 3);
    // Dead-end side corridor on the target row; backward chaining from the
    // target runs into the wall at col n-10.
    for (int c = n - 9; c <= n - 4; ++c) cv.floor(n - 3, c);
    cv.put(1, 1, '@');
    cv.put(2, 2, '$');
    cv.put(n - 3, n - 3, '.');
    return cv.finish();
}

}  // namespace

Level generate_case_level(CaseKind kind, int size) {
    auto require = [&](int lo, int hi, const char* name) {
        if (size < lo || size > hi)
            throw std::out_of_range(std::string(name) + " size " + std::to_string(size) +
                                    " outside [" + std::to_string(lo) + "," +
                                    std::to_string(hi) + "]");
    };
    switch (kind) {
        case CaseKind::Corridor:
            require(5, 48, "corridor");
            return make_corridor(size);
        case CaseKind::TwoPaths:
            require(7, 48, "two_paths");
            return make_two_paths(size);
        case CaseKind::Zigzag:
            require(8, 48, "zigzag");
            return make_zigzag(size);
        case CaseKind::Backtrack:
            require(20, 48, "backtrack");
            return make_backtrack(size);
    }
    throw std::out_of_range("unknown case kind");
}

}  // namespace soko
