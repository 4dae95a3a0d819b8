#include <sstream>

#include "doctest.h"
#include "drc/weights.hpp"

using namespace drc;

namespace {

WeightSet sample_weights() {
    DrcConfig cfg;
    cfg.depth = 2;
    cfg.channels = 4;
    cfg.height = 5;
    cfg.width = 5;
    return random_weights(cfg, 99);
}

bool same(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("save then load reproduces every parameter exactly") {
    WeightSet w = sample_weights();
    std::stringstream buf;
    save_weights(w, buf);
    WeightSet r = load_weights(buf);
    CHECK(r.config.depth == w.config.depth);
    CHECK(r.config.channels == w.config.channels);
    CHECK(r.config.height == w.config.height);
    CHECK(same(r.enc1.weights, w.enc1.weights));
    CHECK(same(r.enc2_bias, w.enc2_bias));
    for (int d = 0; d < 2; ++d)
        for (Gate g : kGates) {
            CHECK(same(r.layers[static_cast<size_t>(d)][g].We.weights,
                       w.layers[static_cast<size_t>(d)][g].We.weights));
            CHECK(same(r.layers[static_cast<size_t>(d)][g].Wh2.weights,
                       w.layers[static_cast<size_t>(d)][g].Wh2.weights));
            CHECK(same(r.layers[static_cast<size_t>(d)][g].bias,
                       w.layers[static_cast<size_t>(d)][g].bias));
        }
    REQUIRE(r.head.has_value());
    CHECK(same(r.head->fc1_w, w.head->fc1_w));
    CHECK(same(r.head->policy_b, w.head->policy_b));
}

TEST_CASE("a truncated file names the tensor being read") {
    WeightSet w = sample_weights();
    std::stringstream buf;
    save_weights(w, buf);
    std::string bytes = buf.str();
    std::istringstream cut(bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_WITH_AS(load_weights(cut), doctest::Contains("truncated"),
                         weight_io_error);
}

TEST_CASE("bad magic and version are rejected") {
    std::istringstream junk("NOPE rest of the file");
    CHECK_THROWS_WITH_AS(load_weights(junk), doctest::Contains("magic"), weight_io_error);

    WeightSet w = sample_weights();
    std::stringstream buf;
    save_weights(w, buf);
    std::string bytes = buf.str();
    bytes[4] = 9;  // version byte
    std::istringstream versioned(bytes);
    CHECK_THROWS_WITH_AS(load_weights(versioned), doctest::Contains("version"),
                         weight_io_error);
}

namespace {

void put_u16(std::ostream& out, uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>(v >> 8)};
    out.write(reinterpret_cast<char*>(b), 2);
}
void put_u32(std::ostream& out, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<char*>(b), 4);
}
void raw_tensor(std::ostream& out, const std::string& name,
                const std::vector<uint32_t>& dims) {
    put_u16(out, static_cast<uint16_t>(name.size()));
    out << name;
    out.put(static_cast<char>(dims.size()));
    uint32_t n = 1;
    for (uint32_t d : dims) {
        put_u32(out, d);
        n *= d;
    }
    for (uint32_t i = 0; i < n; ++i) put_u32(out, 0);  // f32 zeros
}

}  // namespace

TEST_CASE("a wrong-shape tensor is reported with both shapes") {
    // stretched data is caught at save time
    WeightSet w = sample_weights();
    w.enc1_bias.push_back(0.0);
    std::stringstream buf;
    CHECK_THROWS_AS(save_weights(w, buf), weight_io_error);

    // hand-built file: valid encoder, then layer0.i.We with the wrong
    // input-channel count
    std::stringstream bad;
    bad.write("DRCW", 4);
    bad.put(1);
    put_u32(bad, 5);
    raw_tensor(bad, "encoder.conv1.weight", {4, 4, 3, 4});
    raw_tensor(bad, "encoder.conv1.bias", {4});
    raw_tensor(bad, "encoder.conv2.weight", {4, 4, 4, 4});
    raw_tensor(bad, "encoder.conv2.bias", {4});
    raw_tensor(bad, "layer0.i.We", {3, 3, 5, 4});  // expected 2C+1 = 9
    CHECK_THROWS_WITH_AS(load_weights(bad),
                         doctest::Contains("has shape [3,3,5,4], expected [3,3,9,4]"),
                         weight_io_error);
}

TEST_CASE("unknown tensor names are rejected with the expected list") {
    std::stringstream buf;
    buf.write("DRCW", 4);
    buf.put(1);
    unsigned char count[4] = {1, 0, 0, 0};
    buf.write(reinterpret_cast<char*>(count), 4);
    std::string name = "encoder.conv9.weight";
    unsigned char len[2] = {static_cast<unsigned char>(name.size()), 0};
    buf.write(reinterpret_cast<char*>(len), 2);
    buf << name;
    buf.put(1);
    unsigned char dim[4] = {1, 0, 0, 0};
    buf.write(reinterpret_cast<char*>(dim), 4);
    unsigned char f32[4] = {0, 0, 0, 0};
    buf.write(reinterpret_cast<char*>(f32), 4);
    CHECK_THROWS_WITH_AS(load_weights(buf), doctest::Contains("expected names"),
                         weight_io_error);
}

TEST_CASE("headless weight sets round-trip without head tensors") {
    WeightSet w = sample_weights();
    w.head.reset();
    std::stringstream buf;
    save_weights(w, buf);
    WeightSet r = load_weights(buf);
    CHECK(!r.head.has_value());
    CHECK(r.config.channels == w.config.channels);
}
