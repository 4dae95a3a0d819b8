#include "drc/weights.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace drc {

namespace {

constexpr char kMagic[4] = {'D', 'R', 'C', 'W'};
constexpr uint8_t kVersion = 1;

struct RawTensor {
    std::vector<uint32_t> dims;
    std::vector<double> values;  // stored as f32 on disk
    size_t count() const {
        size_t n = 1;
        for (uint32_t d : dims) n *= d;
        return n;
    }
};

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
void put_f32(std::ostream& out, float v) {
    static_assert(sizeof(float) == 4);
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

bool get_bytes(std::istream& in, void* dst, size_t n) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    return static_cast<size_t>(in.gcount()) == n;
}
bool get_u16(std::istream& in, uint16_t& v) {
    unsigned char b[2];
    if (!get_bytes(in, b, 2)) return false;
    v = static_cast<uint16_t>(b[0] | (b[1] << 8));
    return true;
}
bool get_u32(std::istream& in, uint32_t& v) {
    unsigned char b[4];
    if (!get_bytes(in, b, 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return true;
}
bool get_f32(std::istream& in, float& v) {
    uint32_t bits;
    if (!get_u32(in, bits)) return false;
    std::memcpy(&v, &bits, 4);
    return true;
}

void write_tensor(std::ostream& out, const std::string& name,
                  const std::vector<uint32_t>& dims, const std::vector<double>& values) {
    put_u16(out, static_cast<uint16_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    out.put(static_cast<char>(dims.size()));
    size_t expect = 1;
    for (uint32_t d : dims) {
        put_u32(out, d);
        expect *= d;
    }
    if (expect != values.size())
        throw weight_io_error("internal: tensor " + name + " dims/value mismatch");
    for (double v : values) put_f32(out, static_cast<float>(v));
}

std::vector<std::string> expected_names(int depth) {
    std::vector<std::string> names = {"encoder.conv1.weight", "encoder.conv1.bias",
                                      "encoder.conv2.weight", "encoder.conv2.bias"};
    for (int d = 0; d < depth; ++d) {
        std::string p = "layer" + std::to_string(d) + ".";
        for (Gate g : kGates) {
            std::string gp = p + gate_name(g) + ".";
            names.push_back(gp + "We");
            names.push_back(gp + "Wh1");
            names.push_back(gp + "Wh2");
            names.push_back(gp + "bias");
        }
        names.push_back(p + "pool.mean");
        names.push_back(p + "pool.max");
    }
    for (const char* n : {"head.fc1.weight", "head.fc1.bias", "head.policy.weight",
                          "head.policy.bias", "head.value.weight", "head.value.bias"})
        names.push_back(n);
    return names;
}

bool known_name(const std::string& name) {
    for (const char* n : {"encoder.conv1.weight", "encoder.conv1.bias",
                          "encoder.conv2.weight", "encoder.conv2.bias",
                          "head.fc1.weight", "head.fc1.bias", "head.policy.weight",
                          "head.policy.bias", "head.value.weight", "head.value.bias"})
        if (name == n) return true;
    if (name.rfind("layer", 0) != 0) return false;
    size_t dot = name.find('.');
    if (dot == std::string::npos || dot == 5) return false;
    for (size_t i = 5; i < dot; ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    std::string rest = name.substr(dot + 1);
    for (const char* g : {"i", "j", "f", "o"})
        for (const char* k : {"We", "Wh1", "Wh2", "bias"})
            if (rest == std::string(g) + "." + k) return true;
    return rest == "pool.mean" || rest == "pool.max";
}

Kernel kernel_from(const RawTensor& t, const std::string& name) {
    if (t.dims.size() != 4)
        throw weight_io_error("tensor " + name + " expected 4 dims, got " +
                              std::to_string(t.dims.size()));
    Kernel k(static_cast<int>(t.dims[0]), static_cast<int>(t.dims[1]),
             static_cast<int>(t.dims[2]), static_cast<int>(t.dims[3]));
    k.weights = t.values;
    return k;
}

std::string shape_str(const std::vector<uint32_t>& dims) {
    std::string s = "[";
    for (size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(dims[i]);
    }
    return s + "]";
}

void require_shape(const RawTensor& t, const std::string& name,
                   const std::vector<uint32_t>& want) {
    if (t.dims != want)
        throw weight_io_error("tensor " + name + " has shape " + shape_str(t.dims) +
                              ", expected " + shape_str(want));
}

}  // namespace

void save_weights(const WeightSet& w, std::ostream& out) {
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));

    uint32_t count = 4 + static_cast<uint32_t>(w.layers.size()) * (4 * 4 + 2) +
                     (w.head ? 6 : 0);
    put_u32(out, count);

    uint32_t C = static_cast<uint32_t>(w.config.channels);
    write_tensor(out, "encoder.conv1.weight", {4, 4, 3, C}, w.enc1.weights);
    write_tensor(out, "encoder.conv1.bias", {C}, w.enc1_bias);
    write_tensor(out, "encoder.conv2.weight", {4, 4, C, C}, w.enc2.weights);
    write_tensor(out, "encoder.conv2.bias", {C}, w.enc2_bias);
    for (size_t d = 0; d < w.layers.size(); ++d) {
        std::string p = "layer" + std::to_string(d) + ".";
        for (Gate g : kGates) {
            const GateConvs& gc = w.layers[d][g];
            std::string gp = p + gate_name(g) + ".";
            write_tensor(out, gp + "We", {3, 3, 2 * C + 1, C}, gc.We.weights);
            write_tensor(out, gp + "Wh1", {3, 3, C, C}, gc.Wh1.weights);
            write_tensor(out, gp + "Wh2", {3, 3, C, C}, gc.Wh2.weights);
            write_tensor(out, gp + "bias", {C}, gc.bias);
        }
        write_tensor(out, p + "pool.mean", {C}, w.layers[d].pool_mean);
        write_tensor(out, p + "pool.max", {C}, w.layers[d].pool_max);
    }
    if (w.head) {
        uint32_t hw = static_cast<uint32_t>(w.config.height * w.config.width) * C;
        write_tensor(out, "head.fc1.weight", {256, hw}, w.head->fc1_w);
        write_tensor(out, "head.fc1.bias", {256}, w.head->fc1_b);
        write_tensor(out, "head.policy.weight", {4, 256}, w.head->policy_w);
        write_tensor(out, "head.policy.bias", {4}, w.head->policy_b);
        write_tensor(out, "head.value.weight", {1, 256}, w.head->value_w);
        write_tensor(out, "head.value.bias", {1}, w.head->value_b);
    }
}

void save_weights_file(const WeightSet& w, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw weight_io_error("cannot open for writing: " + path);
    save_weights(w, out);
}

WeightSet load_weights(std::istream& in) {
    char magic[4];
    if (!get_bytes(in, magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw weight_io_error("bad magic: not a DRCW weight file");
    int version = in.get();
    if (version != kVersion)
        throw weight_io_error("unsupported version " + std::to_string(version) +
                              ", expected " + std::to_string(kVersion));
    uint32_t count;
    if (!get_u32(in, count)) throw weight_io_error("truncated header");

    std::map<std::string, RawTensor> tensors;
    for (uint32_t i = 0; i < count; ++i) {
        uint16_t name_len;
        if (!get_u16(in, name_len)) throw weight_io_error("truncated tensor table");
        std::string name(name_len, '\0');
        if (!get_bytes(in, name.data(), name_len))
            throw weight_io_error("truncated tensor name");
        int ndim = in.get();
        if (ndim < 0) throw weight_io_error("truncated tensor " + name);
        RawTensor t;
        t.dims.resize(static_cast<size_t>(ndim));
        for (auto& d : t.dims)
            if (!get_u32(in, d)) throw weight_io_error("truncated tensor " + name);
        t.values.resize(t.count());
        for (auto& v : t.values) {
            float f;
            if (!get_f32(in, f)) throw weight_io_error("truncated tensor " + name);
            v = f;
        }
        if (!known_name(name)) {
            std::string msg = "unknown tensor name '" + name + "'; expected names: ";
            auto names = expected_names(1);
            for (size_t k = 0; k < names.size(); ++k) {
                if (k) msg += ", ";
                msg += names[k];
            }
            msg += " (layer index up to D-1)";
            throw weight_io_error(msg);
        }
        tensors.emplace(std::move(name), std::move(t));
    }

    auto fetch = [&](const std::string& name) -> const RawTensor& {
        auto it = tensors.find(name);
        if (it == tensors.end()) throw weight_io_error("missing tensor " + name);
        return it->second;
    };

    WeightSet w;
    const RawTensor& e1 = fetch("encoder.conv1.weight");
    if (e1.dims.size() != 4) throw weight_io_error("encoder.conv1.weight must be 4-d");
    uint32_t C = e1.dims[3];
    w.config.channels = static_cast<int>(C);
    require_shape(e1, "encoder.conv1.weight", {4, 4, 3, C});
    w.enc1 = kernel_from(e1, "encoder.conv1.weight");
    w.enc1_bias = fetch("encoder.conv1.bias").values;
    require_shape(fetch("encoder.conv1.bias"), "encoder.conv1.bias", {C});
    require_shape(fetch("encoder.conv2.weight"), "encoder.conv2.weight", {4, 4, C, C});
    w.enc2 = kernel_from(fetch("encoder.conv2.weight"), "encoder.conv2.weight");
    require_shape(fetch("encoder.conv2.bias"), "encoder.conv2.bias", {C});
    w.enc2_bias = fetch("encoder.conv2.bias").values;

    int depth = 0;
    while (tensors.count("layer" + std::to_string(depth) + ".i.We")) ++depth;
    if (depth == 0) throw weight_io_error("missing tensor layer0.i.We");
    w.config.depth = depth;
    w.layers.resize(static_cast<size_t>(depth));
    for (int d = 0; d < depth; ++d) {
        std::string p = "layer" + std::to_string(d) + ".";
        for (Gate g : kGates) {
            std::string gp = p + gate_name(g) + ".";
            require_shape(fetch(gp + "We"), gp + "We", {3, 3, 2 * C + 1, C});
            require_shape(fetch(gp + "Wh1"), gp + "Wh1", {3, 3, C, C});
            require_shape(fetch(gp + "Wh2"), gp + "Wh2", {3, 3, C, C});
            require_shape(fetch(gp + "bias"), gp + "bias", {C});
            GateConvs& gc = w.layers[static_cast<size_t>(d)][g];
            gc.We = kernel_from(fetch(gp + "We"), gp + "We");
            gc.Wh1 = kernel_from(fetch(gp + "Wh1"), gp + "Wh1");
            gc.Wh2 = kernel_from(fetch(gp + "Wh2"), gp + "Wh2");
            gc.bias = fetch(gp + "bias").values;
        }
        require_shape(fetch(p + "pool.mean"), p + "pool.mean", {C});
        require_shape(fetch(p + "pool.max"), p + "pool.max", {C});
        w.layers[static_cast<size_t>(d)].pool_mean = fetch(p + "pool.mean").values;
        w.layers[static_cast<size_t>(d)].pool_max = fetch(p + "pool.max").values;
    }

    if (tensors.count("head.fc1.weight")) {
        MlpHead head;
        const RawTensor& fc1 = fetch("head.fc1.weight");
        if (fc1.dims.size() != 2 || fc1.dims[0] != 256 || fc1.dims[1] % C != 0)
            throw weight_io_error("tensor head.fc1.weight has shape " +
                                  shape_str(fc1.dims) + ", expected [256,H*W*C]");
        head.fc1_w = fc1.values;
        require_shape(fetch("head.fc1.bias"), "head.fc1.bias", {256});
        head.fc1_b = fetch("head.fc1.bias").values;
        require_shape(fetch("head.policy.weight"), "head.policy.weight", {4, 256});
        head.policy_w = fetch("head.policy.weight").values;
        require_shape(fetch("head.policy.bias"), "head.policy.bias", {4});
        head.policy_b = fetch("head.policy.bias").values;
        require_shape(fetch("head.value.weight"), "head.value.weight", {1, 256});
        head.value_w = fetch("head.value.weight").values;
        require_shape(fetch("head.value.bias"), "head.value.bias", {1});
        head.value_b = fetch("head.value.bias").values;
        uint32_t cells = fc1.dims[1] / C;
        int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cells))));
        w.config.height = side;
        w.config.width = static_cast<int>(cells) / std::max(side, 1);
        w.head = std::move(head);
    } else {
        w.config.height = 0;
        w.config.width = 0;
    }
    return w;
}

WeightSet load_weights_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw weight_io_error("cannot open: " + path);
    return load_weights(in);
}

void quantize_f32(WeightSet& w) {
    auto q = [](std::vector<double>& v) {
        for (double& x : v) x = static_cast<float>(x);
    };
    q(w.enc1.weights);
    q(w.enc1_bias);
    q(w.enc2.weights);
    q(w.enc2_bias);
    for (auto& layer : w.layers) {
        for (Gate g : kGates) {
            q(layer[g].We.weights);
            q(layer[g].Wh1.weights);
            q(layer[g].Wh2.weights);
            q(layer[g].bias);
        }
        q(layer.pool_mean);
        q(layer.pool_max);
    }
    if (w.head) {
        q(w.head->fc1_w);
        q(w.head->fc1_b);
        q(w.head->policy_w);
        q(w.head->policy_b);
        q(w.head->value_w);
        q(w.head->value_b);
    }
}

WeightSet random_weights(const DrcConfig& config, uint64_t seed, double scale) {
    // splitmix64-driven uniforms keep this reproducible across platforms
    uint64_t state = seed;
    auto next = [&state]() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    auto uni = [&]() { return (static_cast<double>(next() >> 11) / 9007199254740992.0) * 2.0 - 1.0; };
    auto fill = [&](std::vector<double>& v) {
        for (double& x : v) x = uni() * scale;
    };

    WeightSet w;
    w.config = config;
    int C = config.channels;
    w.enc1 = Kernel(4, 4, 3, C);
    w.enc2 = Kernel(4, 4, C, C);
    w.enc1_bias.assign(static_cast<size_t>(C), 0.0);
    w.enc2_bias.assign(static_cast<size_t>(C), 0.0);
    fill(w.enc1.weights);
    fill(w.enc1_bias);
    fill(w.enc2.weights);
    fill(w.enc2_bias);
    w.layers.resize(static_cast<size_t>(config.depth));
    for (auto& layer : w.layers) {
        for (Gate g : kGates) {
            GateConvs& gc = layer[g];
            gc.We = Kernel(3, 3, 2 * C + 1, C);
            gc.Wh1 = Kernel(3, 3, C, C);
            gc.Wh2 = Kernel(3, 3, C, C);
            gc.bias.assign(static_cast<size_t>(C), 0.0);
            fill(gc.We.weights);
            fill(gc.Wh1.weights);
            fill(gc.Wh2.weights);
            fill(gc.bias);
        }
        layer.pool_mean.assign(static_cast<size_t>(C), 0.0);
        layer.pool_max.assign(static_cast<size_t>(C), 0.0);
        fill(layer.pool_mean);
        fill(layer.pool_max);
    }
    MlpHead head;
    size_t hw = static_cast<size_t>(config.height) * config.width * C;
    head.fc1_w.assign(256 * hw, 0.0);
    head.fc1_b.assign(256, 0.0);
    head.policy_w.assign(4 * 256, 0.0);
    head.policy_b.assign(4, 0.0);
    head.value_w.assign(256, 0.0);
    head.value_b.assign(1, 0.0);
    fill(head.fc1_w);
    fill(head.fc1_b);
    fill(head.policy_w);
    fill(head.policy_b);
    fill(head.value_w);
    fill(head.value_b);
    w.head = std::move(head);
    quantize_f32(w);
    return w;
}

}  // namespace drc
