#ifndef HARNESS_HEATMAP_HPP
#define HARNESS_HEATMAP_HPP

#include <string>

#include "drc/tensor.hpp"

namespace harness {

// Diverging palette PPM (P6): negative blue, zero white, positive red,
// scaled by the channel's max |activation|.
std::string heatmap_ppm(const drc::Tensor3& tensor, int channel);

// (row, col, value) CSV of one channel slice.
std::string heatmap_csv(const drc::Tensor3& tensor, int channel);

// Re-ingests a heatmap CSV into a 1-channel tensor (exact round-trip).
drc::Tensor3 heatmap_from_csv(const std::string& text);

void dump_heatmap(const drc::Tensor3& tensor, int channel, const std::string& path_stem);

}  // namespace harness

#endif  // HARNESS_HEATMAP_HPP
