#pragma once

#include <unistd.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecraft/common.hpp"
#include "statecraft/graph.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

// Archive layout: an 8-byte little-endian manifest length, a UTF-8 JSON
// manifest mapping parameter name -> {shape, dtype, offset}, then the raw
// parameter data as little-endian IEEE-754 f32, offsets relative to the
// start of the data section.

struct NamedTensor {
    std::string name;
    Tensor<float> value;
};

struct LoadReport {
    int loaded = 0;
    int skipped = 0;        // archive entries with no matching graph parameter
    int left_at_init = 0;   // graph parameters absent from the archive
};

namespace detail {

inline void put_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

inline void append_f32_le(std::string& out, const float* src, std::size_t n) {
    if constexpr (std::endian::native == std::endian::little) {
        out.append(reinterpret_cast<const char*>(src), n * 4);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const auto bits = std::bit_cast<std::uint32_t>(src[i]);
            for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
        }
    }
}

inline void read_f32_le(const unsigned char* src, float* dst, std::size_t n) {
    if constexpr (std::endian::native == std::endian::little) {
        std::memcpy(dst, src, n * 4);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t bits = 0;
            for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(src[i * 4 + b]) << (8 * b);
            dst[i] = std::bit_cast<float>(bits);
        }
    }
}

}  // namespace detail

// Writes the whole file to a sibling temp path, then renames into place, so
// an interrupted save never leaves a truncated archive behind.
inline void write_archive(const std::string& path, const std::vector<NamedTensor>& tensors) {
    nlohmann::ordered_json manifest = nlohmann::ordered_json::object();
    std::uint64_t offset = 0;
    for (const auto& t : tensors) {
        if (manifest.contains(t.name)) throw IoError("archive: duplicate parameter name " + t.name);
        manifest[t.name] = {{"shape", t.value.shape}, {"dtype", "f32"}, {"offset", offset}};
        offset += static_cast<std::uint64_t>(t.value.numel()) * 4;
    }
    const std::string mtext = manifest.dump();

    std::string blob;
    blob.reserve(16 + mtext.size() + offset);
    detail::put_u64_le(blob, mtext.size());
    blob += mtext;
    for (const auto& t : tensors) detail::append_f32_le(blob, t.value.data.data(), t.value.data.size());

    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = target.string() + ".tmp." + std::to_string(static_cast<unsigned long>(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("archive: cannot open " + tmp.string() + " for writing");
        f.write(blob.data(), static_cast<std::streamsize>(blob.size()));
        if (!f) throw IoError("archive: short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("archive: cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

inline std::vector<NamedTensor> read_archive(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("archive: cannot open " + path);
    std::string raw((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (raw.size() < 8) throw FormatError("archive: " + path + " is too short to hold a manifest length");
    const auto* bytes = reinterpret_cast<const unsigned char*>(raw.data());
    const std::uint64_t mlen = detail::get_u64_le(bytes);
    if (8 + mlen > raw.size()) throw FormatError("archive: manifest length exceeds file size in " + path);

    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(raw.substr(8, mlen));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("archive: bad manifest in " + path + ": " + e.what());
    }
    if (!manifest.is_object()) throw FormatError("archive: manifest must be a JSON object in " + path);

    const unsigned char* data = bytes + 8 + mlen;
    const std::uint64_t data_len = raw.size() - 8 - mlen;

    std::vector<NamedTensor> out;
    out.reserve(manifest.size());
    for (auto it = manifest.begin(); it != manifest.end(); ++it) {
        const auto& meta = it.value();
        if (!meta.contains("shape") || !meta.contains("dtype") || !meta.contains("offset"))
            throw FormatError("archive: entry " + it.key() + " is missing shape/dtype/offset");
        if (meta["dtype"].get<std::string>() != "f32")
            throw FormatError("archive: entry " + it.key() + " has unsupported dtype " + meta["dtype"].get<std::string>());
        NamedTensor t;
        t.name = it.key();
        t.value = Tensor<float>(meta["shape"].get<std::vector<int>>());
        const std::uint64_t off = meta["offset"].get<std::uint64_t>();
        const std::uint64_t need = static_cast<std::uint64_t>(t.value.numel()) * 4;
        if (off + need > data_len)
            throw FormatError("archive: entry " + it.key() + " runs past the end of " + path);
        detail::read_f32_le(data + off, t.value.data.data(), t.value.data.size());
        out.push_back(std::move(t));
    }
    return out;
}

// ---------- graph-level save/load ----------

inline std::vector<NamedTensor> collect_weights(ModelGraph<float>& g, bool backbone_only = false) {
    std::vector<NamedTensor> out;
    const int limit = backbone_only ? g.backbone_size : g.size();
    for (int i = 0; i < limit; ++i)
        for (auto& p : layer_params(g.at(i))) out.push_back({p.name, *p.value});
    return out;
}

inline void save_weights(ModelGraph<float>& g, const std::string& path, bool backbone_only = false) {
    write_archive(path, collect_weights(g, backbone_only));
}

// strict: archive and graph parameters must match one-to-one. Loose mode
// loads the intersection by name and reports what was skipped either way; a
// name match with a shape mismatch is always an error.
inline LoadReport load_weights(ModelGraph<float>& g, const std::string& path, bool strict = true) {
    const std::vector<NamedTensor> entries = read_archive(path);
    LoadReport report;
    std::vector<char> used(entries.size(), 0);
    std::unordered_map<std::string, std::size_t> by_name;
    for (std::size_t k = 0; k < entries.size(); ++k) by_name.emplace(entries[k].name, k);
    for (int i = 0; i < g.size(); ++i) {
        for (auto& p : layer_params(g.at(i))) {
            const NamedTensor* found = nullptr;
            if (auto it = by_name.find(p.name); it != by_name.end()) {
                found = &entries[it->second];
                used[it->second] = 1;
            }
            if (!found) {
                ++report.left_at_init;
                if (strict) throw FormatError("archive: " + path + " is missing parameter " + p.name);
                continue;
            }
            if (found->value.shape != p.value->shape)
                throw FormatError("archive: shape mismatch for " + p.name + ": file has " + found->value.shape_str() +
                                  ", model has " + p.value->shape_str());
            *p.value = found->value;
            ++report.loaded;
        }
    }
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!used[k]) {
            ++report.skipped;
            if (strict) throw FormatError("archive: " + path + " has parameter " + entries[k].name + " not in the model");
        }
    }
    return report;
}

}  // namespace statecraft
