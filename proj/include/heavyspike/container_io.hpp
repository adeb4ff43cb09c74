#pragma once

#include <openssl/evp.h>

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heavyspike/common.hpp"
#include "heavyspike/model.hpp"

// Instance container: 8-byte magic "HSPIKE01", a little-endian uint64 length
// prefix, a UTF-8 JSON header, then the spike vector and the Y payload as
// little-endian float64, row major (tensor index order (i,j,k), i slowest).

namespace heavyspike::io {

static_assert(std::endian::native == std::endian::little,
              "container payload is little-endian; big-endian hosts unsupported");

constexpr char kMagic[9] = "HSPIKE01";

namespace detail {

inline nlohmann::json noise_json(const NoiseModel& nm) {
    nlohmann::json j;
    j["tag"] = nm.name();
    if (nm.has_d()) j["d"] = nm.d;
    return j;
}

inline NoiseModel noise_from_json(const nlohmann::json& j) {
    double d = j.contains("d") ? j["d"].get<double>() : 0.0;
    return NoiseModel::from_name(j["tag"].get<std::string>(), d);
}

inline void write_doubles(std::ofstream& f, const Vec& v) {
    f.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

inline void read_doubles(std::ifstream& f, Vec& v) {
    f.read(reinterpret_cast<char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!f) throw std::runtime_error("container truncated while reading payload");
}

inline void write_header(std::ofstream& f, const nlohmann::json& header) {
    f.write(kMagic, 8);
    std::string hs = header.dump();
    uint64_t len = hs.size();
    f.write(reinterpret_cast<const char*>(&len), 8);
    f.write(hs.data(), static_cast<std::streamsize>(hs.size()));
}

inline nlohmann::json read_header(std::ifstream& f) {
    char magic[8];
    f.read(magic, 8);
    if (!f || std::string(magic, 8) != std::string(kMagic, 8))
        throw std::runtime_error("not a HSPIKE01 container");
    uint64_t len = 0;
    f.read(reinterpret_cast<char*>(&len), 8);
    if (!f || len > (uint64_t{1} << 30)) throw std::runtime_error("bad container header length");
    std::string hs(len, '\0');
    f.read(hs.data(), static_cast<std::streamsize>(len));
    if (!f) throw std::runtime_error("container truncated while reading header");
    return nlohmann::json::parse(hs);
}

}  // namespace detail

inline void write_matrix_instance(const std::string& path, const SpikedMatrixInstance& inst) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    nlohmann::json h;
    h["kind"] = "matrix";
    h["n"] = inst.n;
    h["snr_prime"] = inst.snr_prime;
    h["noise"] = detail::noise_json(inst.noise);
    h["seed"] = inst.seed;
    h["spike_kind"] = to_string(inst.spike.kind);
    detail::write_header(f, h);
    detail::write_doubles(f, inst.spike.values);
    detail::write_doubles(f, inst.Y.a);
    if (!f) throw std::runtime_error("write failed: " + path);
}

inline void write_tensor_instance(const std::string& path, const SpikedTensorInstance& inst) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    nlohmann::json h;
    h["kind"] = "tensor";
    h["n"] = inst.n;
    h["snr_scaled"] = inst.snr_scaled;
    h["noise"] = detail::noise_json(inst.noise);
    h["seed"] = inst.seed;
    h["spike_kind"] = to_string(inst.spike.kind);
    detail::write_header(f, h);
    detail::write_doubles(f, inst.spike.values);
    detail::write_doubles(f, inst.Y.a);
    if (!f) throw std::runtime_error("write failed: " + path);
}

inline std::string container_kind(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return detail::read_header(f)["kind"].get<std::string>();
}

inline SpikedMatrixInstance read_matrix_instance(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    nlohmann::json h = detail::read_header(f);
    if (h["kind"] != "matrix") throw std::runtime_error("container is not a matrix instance");
    SpikedMatrixInstance inst;
    inst.n = h["n"].get<int>();
    inst.snr_prime = h["snr_prime"].get<double>();
    inst.noise = detail::noise_from_json(h["noise"]);
    inst.seed = h["seed"].get<uint64_t>();
    Vec spike(inst.n);
    detail::read_doubles(f, spike);
    inst.spike = PlantedVector::from_values(std::move(spike),
                                            spike_kind_from_string(h["spike_kind"].get<std::string>()));
    inst.Y = Matrix(inst.n);
    detail::read_doubles(f, inst.Y.a);
    return inst;
}

inline SpikedTensorInstance read_tensor_instance(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    nlohmann::json h = detail::read_header(f);
    if (h["kind"] != "tensor") throw std::runtime_error("container is not a tensor instance");
    SpikedTensorInstance inst;
    inst.n = h["n"].get<int>();
    inst.snr_scaled = h["snr_scaled"].get<double>();
    inst.noise = detail::noise_from_json(h["noise"]);
    inst.seed = h["seed"].get<uint64_t>();
    Vec spike(inst.n);
    detail::read_doubles(f, spike);
    inst.spike = PlantedVector::from_values(std::move(spike),
                                            spike_kind_from_string(h["spike_kind"].get<std::string>()));
    inst.Y = Tensor3(inst.n);
    detail::read_doubles(f, inst.Y.a);
    return inst;
}

// Debug dump of a bare matrix (per-coloring estimates); spike slot is zeroed.
inline void write_debug_matrix(const std::string& path, const Matrix& M,
                               const std::string& note) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    nlohmann::json h;
    h["kind"] = "matrix";
    h["n"] = M.n;
    h["snr_prime"] = 0.0;
    h["noise"] = {{"tag", "zero-test-hook"}};
    h["seed"] = 0;
    h["spike_kind"] = "rademacher";
    h["note"] = note;
    detail::write_header(f, h);
    Vec zero(M.n, 1.0);  // placeholder spike so readers see a valid container
    detail::write_doubles(f, zero);
    detail::write_doubles(f, M.a);
}

inline std::string sha256_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (f) {
        f.read(buf, sizeof(buf));
        std::streamsize got = f.gcount();
        if (got > 0) EVP_DigestUpdate(ctx, buf, static_cast<size_t>(got));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

}  // namespace heavyspike::io
