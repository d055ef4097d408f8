#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecraft/augment.hpp"
#include "statecraft/common.hpp"
#include "statecraft/image_io.hpp"
#include "statecraft/preprocess.hpp"
#include "statecraft/rng.hpp"
#include "statecraft/tensor.hpp"

namespace statecraft {

// Fixed stream ids for seed derivation, so the split, the shuffle, the
// augmentation draws, the dropout masks, and the parameter init never share
// a random stream.
namespace seed_stream {
inline constexpr std::uint64_t kSplit = 1;
inline constexpr std::uint64_t kShuffle = 2;
inline constexpr std::uint64_t kAugment = 3;
inline constexpr std::uint64_t kDropout = 4;
inline constexpr std::uint64_t kInit = 5;
inline constexpr std::uint64_t kSynthetic = 6;
}  // namespace seed_stream

enum class Split { Train, Val, Test };

inline const char* split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        default: return "test";
    }
}

inline Split split_from_name(const std::string& s) {
    if (s == "train") return Split::Train;
    if (s == "val") return Split::Val;
    if (s == "test") return Split::Test;
    throw FormatError("unknown split name '" + s + "'");
}

// ---------- dataset on disk ----------

struct DataItem {
    std::string rel_path;  // "<class_dir>/<file>"
    int label = -1;
};

struct Dataset {
    std::string root;
    std::vector<std::string> class_names;
    std::vector<DataItem> items;

    int classes() const { return static_cast<int>(class_names.size()); }

    std::vector<int> class_counts() const {
        std::vector<int> n(class_names.size(), 0);
        for (const auto& it : items) ++n[static_cast<std::size_t>(it.label)];
        return n;
    }
};

namespace detail {

inline bool has_image_extension(const std::filesystem::path& p) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e == ".png" || e == ".jpg" || e == ".jpeg";
}

}  // namespace detail

// One directory per class, class name = directory name; classes and files
// sorted by name so the item order is stable across machines.
inline Dataset scan_directory(const std::string& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) throw DataError("dataset: " + root + " is not a directory");
    Dataset ds;
    ds.root = root;
    for (const auto& e : fs::directory_iterator(root)) {
        if (!e.is_directory()) continue;
        const std::string name = e.path().filename().string();
        if (!name.empty() && name[0] != '.') ds.class_names.push_back(name);
    }
    std::sort(ds.class_names.begin(), ds.class_names.end());
    if (ds.class_names.empty()) throw DataError("dataset: " + root + " has no class directories");
    for (int label = 0; label < ds.classes(); ++label) {
        std::vector<std::string> files;
        for (const auto& e : fs::directory_iterator(fs::path(root) / ds.class_names[static_cast<std::size_t>(label)]))
            if (e.is_regular_file() && detail::has_image_extension(e.path())) files.push_back(e.path().filename().string());
        std::sort(files.begin(), files.end());
        if (files.empty())
            throw DataError("dataset: class '" + ds.class_names[static_cast<std::size_t>(label)] + "' has no images");
        for (const auto& f : files)
            ds.items.push_back({ds.class_names[static_cast<std::size_t>(label)] + "/" + f, label});
    }
    return ds;
}

// ---------- stratified split ----------

struct SplitFractions {
    double train = 0.68;
    double val = 0.15;
    double test = 0.17;
};

struct SplitResult {
    std::vector<Split> assign;             // per dataset item
    std::vector<int> train, val, test;     // item indices per split

    const std::vector<int>& of(Split s) const {
        switch (s) {
            case Split::Train: return train;
            case Split::Val: return val;
            default: return test;
        }
    }
};

namespace detail {

// Fully specified shuffle (uniform_int draws), so orders are identical
// across standard libraries.
template <typename V>
void fisher_yates(V& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
}

// Rounds n·f_k to integers summing to n, assigning leftovers by largest
// fractional part (ties favor the earlier bucket).
inline std::vector<int> largest_remainder(int n, const std::vector<double>& f) {
    std::vector<int> base(f.size());
    std::vector<std::pair<double, int>> rem;
    int used = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double q = n * f[k];
        base[k] = static_cast<int>(std::floor(q + 1e-9));
        used += base[k];
        rem.push_back({q - base[k], static_cast<int>(k)});
    }
    std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int i = 0; i < n - used; ++i) ++base[static_cast<std::size_t>(rem[static_cast<std::size_t>(i)].second)];
    return base;
}

}  // namespace detail

// Splits each class independently with largest-remainder rounding, so class
// balance carries into every split and sizes are reproducible arithmetic.
inline SplitResult stratified_split(const Dataset& ds, const SplitFractions& f, std::uint64_t seed) {
    const double sum = f.train + f.val + f.test;
    if (std::abs(sum - 1.0) > 1e-6) throw ConfigError("split fractions sum to " + std::to_string(sum) + ", expected 1");
    if (f.train < 0 || f.val < 0 || f.test < 0) throw ConfigError("split fractions must be non-negative");
    if (ds.items.empty()) throw DataError("split: empty dataset");

    SplitResult r;
    r.assign.resize(ds.items.size(), Split::Train);
    std::vector<std::vector<int>> per_class(static_cast<std::size_t>(ds.classes()));
    for (std::size_t i = 0; i < ds.items.size(); ++i)
        per_class[static_cast<std::size_t>(ds.items[i].label)].push_back(static_cast<int>(i));

    for (int c = 0; c < ds.classes(); ++c) {
        auto& idx = per_class[static_cast<std::size_t>(c)];
        Rng rng(derive_seed(seed, {seed_stream::kSplit, static_cast<std::uint64_t>(c)}));
        detail::fisher_yates(idx, rng);
        const std::vector<int> counts = detail::largest_remainder(static_cast<int>(idx.size()), {f.train, f.val, f.test});
        int at = 0;
        for (int k = 0; k < 3; ++k) {
            const Split s = k == 0 ? Split::Train : (k == 1 ? Split::Val : Split::Test);
            for (int j = 0; j < counts[static_cast<std::size_t>(k)]; ++j, ++at)
                r.assign[static_cast<std::size_t>(idx[static_cast<std::size_t>(at)])] = s;
        }
    }
    for (std::size_t i = 0; i < r.assign.size(); ++i) {
        const int idx = static_cast<int>(i);
        switch (r.assign[i]) {
            case Split::Train: r.train.push_back(idx); break;
            case Split::Val: r.val.push_back(idx); break;
            case Split::Test: r.test.push_back(idx); break;
        }
    }
    return r;
}

// ---------- split manifest ----------

// The manifest file is a single JSON object: relative path -> split name.
inline void write_split_manifest(const std::string& path, const Dataset& ds, const SplitResult& r) {
    nlohmann::json m = nlohmann::json::object();
    for (std::size_t i = 0; i < ds.items.size(); ++i) m[ds.items[i].rel_path] = split_name(r.assign[i]);

    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw IoError("manifest: cannot open " + tmp.string() + " for writing");
        f << m.dump(2) << "\n";
        if (!f) throw IoError("manifest: short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("manifest: cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

inline SplitResult read_split_manifest(const std::string& path, const Dataset& ds) {
    std::ifstream f(path);
    if (!f) throw IoError("manifest: cannot open " + path);
    nlohmann::json m;
    try {
        f >> m;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("manifest: bad JSON in " + path + ": " + e.what());
    }
    if (!m.is_object()) throw FormatError("manifest: " + path + " must be a JSON object");
    if (m.size() != ds.items.size())
        throw DataError("manifest: " + path + " lists " + std::to_string(m.size()) + " items, dataset has " +
                        std::to_string(ds.items.size()));
    SplitResult r;
    r.assign.resize(ds.items.size(), Split::Train);
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        const auto it = m.find(ds.items[i].rel_path);
        if (it == m.end()) throw DataError("manifest: " + path + " is missing " + ds.items[i].rel_path);
        r.assign[i] = split_from_name(it->get<std::string>());
        switch (r.assign[i]) {
            case Split::Train: r.train.push_back(static_cast<int>(i)); break;
            case Split::Val: r.val.push_back(static_cast<int>(i)); break;
            case Split::Test: r.test.push_back(static_cast<int>(i)); break;
        }
    }
    return r;
}

// ---------- batching ----------

// Index batches for one epoch: a seeded shuffle of the pool, cut into
// batch_size chunks, the last possibly short. Order depends only on
// (seed, epoch).
inline std::vector<std::vector<int>> epoch_batches(const std::vector<int>& pool, int batch_size, std::uint64_t seed,
                                                   int epoch, bool shuffle = true) {
    if (pool.empty()) throw ConfigError("batches: empty item pool");
    if (batch_size < 1) throw ConfigError("batches: batch size must be >= 1, got " + std::to_string(batch_size));
    std::vector<int> order = pool;
    if (shuffle) {
        Rng rng(derive_seed(seed, {seed_stream::kShuffle, static_cast<std::uint64_t>(epoch)}));
        detail::fisher_yates(order, rng);
    }
    std::vector<std::vector<int>> out;
    for (std::size_t at = 0; at < order.size(); at += static_cast<std::size_t>(batch_size)) {
        const std::size_t end = std::min(order.size(), at + static_cast<std::size_t>(batch_size));
        out.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(at), order.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return out;
}

struct Batch {
    Tensor<float> x;          // [B, H, W, 3]
    std::vector<int> labels;
    std::vector<int> items;   // dataset item indices
};

// Loads, resizes, augments (training only), and normalizes items into a
// stacked batch. Augmentation draws come from a per-(epoch, item) stream so
// results do not depend on worker count or batch boundaries. Decoded,
// resized images are cached in memory when enabled.
class ImageLoader {
  public:
    ImageLoader(const Dataset& ds, int out_h, int out_w, std::uint64_t seed, const ZcaModel* zca = nullptr,
                std::optional<AugmentSpec> aug = std::nullopt, bool cache = true)
        : ds_(&ds), out_h_(out_h), out_w_(out_w), seed_(seed), zca_(zca), aug_(std::move(aug)), cache_(cache) {}

    Batch load(const std::vector<int>& idx, int epoch, bool training) {
        Batch b;
        b.items = idx;
        b.labels.resize(idx.size());
        b.x = Tensor<float>({static_cast<int>(idx.size()), out_h_, out_w_, 3});
        const std::size_t stride = static_cast<std::size_t>(out_h_) * out_w_ * 3;
        parallel_for(static_cast<std::int64_t>(idx.size()), 2, [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i) {
                const int item = idx[static_cast<std::size_t>(i)];
                b.labels[static_cast<std::size_t>(i)] = ds_->items[static_cast<std::size_t>(item)].label;
                Tensor<float> img = resized(item);
                if (training && aug_ && !aug_->identity()) {
                    Rng rng(derive_seed(seed_, {seed_stream::kAugment, static_cast<std::uint64_t>(epoch),
                                                static_cast<std::uint64_t>(item)}));
                    img = apply_augment(img, sample_augment(*aug_, rng));
                }
                img = preprocess(img, out_h_, out_w_, zca_);
                std::copy(img.data.begin(), img.data.end(), b.x.data.begin() + static_cast<std::ptrdiff_t>(i) * static_cast<std::ptrdiff_t>(stride));
            }
        });
        return b;
    }

    Tensor<float> resized(int item) {
        if (cache_) {
            std::lock_guard<std::mutex> lock(mu_);
            const auto it = cache_map_.find(item);
            if (it != cache_map_.end()) return it->second;
        }
        const std::string path = ds_->root + "/" + ds_->items[static_cast<std::size_t>(item)].rel_path;
        Tensor<float> img = resize_bilinear(load_image(path), out_h_, out_w_);
        if (cache_) {
            std::lock_guard<std::mutex> lock(mu_);
            cache_map_.emplace(item, img);
        }
        return img;
    }

    const Dataset& dataset() const { return *ds_; }
    int out_h() const { return out_h_; }
    int out_w() const { return out_w_; }

  private:
    const Dataset* ds_;
    int out_h_, out_w_;
    std::uint64_t seed_;
    const ZcaModel* zca_;
    std::optional<AugmentSpec> aug_;
    bool cache_;
    std::mutex mu_;
    std::unordered_map<int, Tensor<float>> cache_map_;
};

}  // namespace statecraft
