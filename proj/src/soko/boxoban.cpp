#include "soko/boxoban.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace soko {

std::vector<Level> parse_level_file(const std::string& text, const std::string& name) {
    std::vector<Level> levels;
    std::istringstream in(text);
    std::string line;
    std::string block;
    int line_no = 0;
    int block_start = 0;
    auto flush = [&]() {
        if (block.empty()) return;
        try {
            levels.push_back(parse_level(block));
        } catch (const parse_error& e) {
            throw parse_error(name + ":" + std::to_string(block_start) + ": " + e.what());
        }
        block.clear();
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind(';', 0) == 0) {
            flush();  // a new header starts the next block
            block_start = line_no;
            block = line + "\n";
        } else if (line.empty()) {
            flush();
        } else {
            if (block.empty()) block_start = line_no;
            block += line + "\n";
        }
    }
    flush();
    return levels;
}

std::vector<Level> load_boxoban_dir(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(path)) throw parse_error("not a directory: " + path);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<Level> levels;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw parse_error("unreadable file: " + file.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        auto parsed = parse_level_file(buf.str(), file.filename().string());
        levels.insert(levels.end(), parsed.begin(), parsed.end());
    }
    return levels;
}

}  // namespace soko
