#include "harness/heatmap.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "harness/csv.hpp"

namespace harness {

std::string heatmap_ppm(const drc::Tensor3& t, int channel) {
    if (channel < 0 || channel >= t.channels)
        throw std::out_of_range("heatmap: channel " + std::to_string(channel) +
                                " out of range");
    double scale = 0.0;
    for (int r = 0; r < t.height; ++r)
        for (int c = 0; c < t.width; ++c)
            scale = std::max(scale, std::fabs(t.at(r, c, channel)));

    std::string out = "P6\n" + std::to_string(t.width) + " " + std::to_string(t.height) +
                      "\n255\n";
    for (int r = 0; r < t.height; ++r)
        for (int c = 0; c < t.width; ++c) {
            double v = scale > 0.0 ? t.at(r, c, channel) / scale : 0.0;
            unsigned char rgb[3];
            if (v >= 0.0) {  // white -> red
                rgb[0] = 255;
                rgb[1] = rgb[2] = static_cast<unsigned char>(std::lround(255.0 * (1.0 - v)));
            } else {  // white -> blue
                rgb[2] = 255;
                rgb[0] = rgb[1] = static_cast<unsigned char>(std::lround(255.0 * (1.0 + v)));
            }
            out.append(reinterpret_cast<char*>(rgb), 3);
        }
    return out;
}

std::string heatmap_csv(const drc::Tensor3& t, int channel) {
    if (channel < 0 || channel >= t.channels)
        throw std::out_of_range("heatmap: channel out of range");
    CsvWriter csv({"row", "col", "value"});
    for (int r = 0; r < t.height; ++r)
        for (int c = 0; c < t.width; ++c)
            csv.row({std::to_string(r), std::to_string(c),
                     format_double(t.at(r, c, channel))});
    return csv.text();
}

drc::Tensor3 heatmap_from_csv(const std::string& text) {
    auto rows = parse_csv(text);
    if (rows.size() < 2) throw std::invalid_argument("heatmap csv: no data rows");
    int max_r = 0, max_c = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
        max_r = std::max(max_r, std::stoi(rows[i][0]));
        max_c = std::max(max_c, std::stoi(rows[i][1]));
    }
    drc::Tensor3 t(max_r + 1, max_c + 1, 1);
    for (size_t i = 1; i < rows.size(); ++i)
        t.at(std::stoi(rows[i][0]), std::stoi(rows[i][1]), 0) = std::stod(rows[i][2]);
    return t;
}

void dump_heatmap(const drc::Tensor3& t, int channel, const std::string& path_stem) {
    {
        std::ofstream out(path_stem + ".ppm", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path_stem + ".ppm");
        out << heatmap_ppm(t, channel);
    }
    {
        std::ofstream out(path_stem + ".csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path_stem + ".csv");
        out << heatmap_csv(t, channel);
    }
}

}  // namespace harness
