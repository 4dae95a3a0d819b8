#ifndef DRC_TENSOR_HPP
#define DRC_TENSOR_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace drc {

// Dense H x W x C activation map, row-major (row, col, channel).
struct Tensor3 {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(int h, int w, int c, double fill = 0.0)
        : height(h), width(w), channels(c),
          data(static_cast<size_t>(h) * w * c, fill) {}

    size_t index(int r, int c, int ch) const {
        return (static_cast<size_t>(r) * width + c) * channels + ch;
    }
    double& at(int r, int c, int ch) { return data[index(r, c, ch)]; }
    double at(int r, int c, int ch) const { return data[index(r, c, ch)]; }

    bool in_bounds(int r, int c) const {
        return r >= 0 && r < height && c >= 0 && c < width;
    }

    bool same_shape(const Tensor3& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }

    void fill(double v) { data.assign(data.size(), v); }
};

inline Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
    assert(a.same_shape(b));
    Tensor3 out = a;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
    return out;
}

inline double max_abs(const Tensor3& t) {
    double m = 0.0;
    for (double v : t.data) m = std::max(m, std::fabs(v));
    return m;
}

}  // namespace drc

#endif  // DRC_TENSOR_HPP
