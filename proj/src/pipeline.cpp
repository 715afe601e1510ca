#include "ridgeline/pipeline.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>

#include "ridgeline/cubical.hpp"
#include "ridgeline/errors.hpp"
#include "ridgeline/features.hpp"
#include "ridgeline/parallel.hpp"
#include "ridgeline/rips.hpp"

namespace ridgeline {

std::filesystem::path barcode_cache_path(const PipelineConfig& cfg, const std::string& print_id) {
    std::string ext = cfg.barcode_format == "json" ? ".json" : ".csv";
    return cfg.barcodes_dir() / (print_id + ext);
}

std::vector<LabeledBarcode> compute_print_barcodes(const PrintRecord& record,
                                                   const PipelineConfig& cfg) {
    std::vector<LabeledBarcode> out;
    if (record.minutiae_path) {
        MinutiaCloud cloud = load_minutiae_csv(*record.minutiae_path, record.print_id);
        NormalizedCloud normalized = normalize_cloud(cloud);
        for (MetricKind kind : cfg.metrics) {
            BarcodePair pair =
                rips_persistence(distance_matrix(normalized, kind), cfg.rips_max_scale);
            out.push_back({std::string(metric_name(kind)), std::move(pair.h0)});
            out.push_back({std::string(metric_name(kind)), std::move(pair.h1)});
        }
    }
    if (record.image_path) {
        GrayImage img = load_gray_image(*record.image_path);
        auto image_barcodes = image_barcode_suite(img);
        out.insert(out.end(), std::make_move_iterator(image_barcodes.begin()),
                   std::make_move_iterator(image_barcodes.end()));
    }
    return out;
}

namespace {

bool cache_is_valid(const std::filesystem::path& path, const std::string& format) {
    if (!std::filesystem::exists(path)) return false;
    try {
        if (format == "json")
            read_barcodes_json(path);
        else
            read_barcodes_csv(path);
        return true;
    } catch (const DataError&) {
        return false;  // corrupt cache; recompute
    }
}

}  // namespace

CacheStats cache_barcodes(const Manifest& manifest, const PipelineConfig& cfg, bool force,
                          int workers) {
    if (manifest.records.empty()) throw DataError("cache_barcodes: manifest has no prints");
    std::filesystem::create_directories(cfg.barcodes_dir());

    CacheStats stats;
    std::mutex mutex;
    const int n = static_cast<int>(manifest.records.size());
    parallel_for(n, workers, [&](int i) {
        const PrintRecord& rec = manifest.records[i];
        std::filesystem::path path = barcode_cache_path(cfg, rec.print_id);
        if (!force && cache_is_valid(path, cfg.barcode_format)) {
            std::lock_guard<std::mutex> lock(mutex);
            ++stats.skipped;
            return;
        }
        try {
            auto barcodes = compute_print_barcodes(rec, cfg);
            auto records = flatten_barcodes(rec.print_id, barcodes);
            if (cfg.barcode_format == "json")
                write_barcodes_json(path, records);
            else
                write_barcodes_csv(path, records);
            std::lock_guard<std::mutex> lock(mutex);
            ++stats.computed;
            if (!rec.minutiae_path)
                std::cerr << "note: " << rec.print_id << ": no minutiae file, image barcodes only\n";
            if (!rec.image_path)
                std::cerr << "note: " << rec.print_id << ": no image file, minutiae barcodes only\n";
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(mutex);
            ++stats.failed;
            std::cerr << "warning: " << rec.print_id << ": " << e.what() << " (print skipped)\n";
        }
    });
    return stats;
}

FeatureTable cache_features(const Manifest& manifest, const PipelineConfig& cfg, bool force) {
    if (manifest.records.empty()) throw DataError("cache_features: manifest has no prints");
    std::filesystem::path out_path = cfg.features_path();
    if (!force && std::filesystem::exists(out_path)) {
        try {
            return read_features_csv(out_path);
        } catch (const DataError&) {
            // corrupt cache; rebuild below
        }
    }

    std::vector<std::string> missing;
    FeatureTable table;
    table.matrix.names = canonical_feature_names();
    std::vector<PrintFeatureRow> rows;
    for (const PrintRecord& rec : manifest.records) {
        std::filesystem::path path = barcode_cache_path(cfg, rec.print_id);
        if (!std::filesystem::exists(path)) {
            missing.push_back(rec.print_id);
            continue;
        }
        auto records = cfg.barcode_format == "json" ? read_barcodes_json(path)
                                                    : read_barcodes_csv(path);
        rows.push_back(featurize_print(barcodes_from_records(records), rec.print_id, rec.label));
    }
    if (!missing.empty())
        throw DataError("cache_features: no barcode cache for " + std::to_string(missing.size()) +
                        " print(s) (first: '" + missing.front() +
                        "'); run 'ridgeline barcodes' first");

    table.matrix.X.resize(static_cast<Eigen::Index>(rows.size()), kFeaturesPerPrint);
    for (size_t i = 0; i < rows.size(); ++i) {
        table.print_ids.push_back(rows[i].print_id);
        table.labels.push_back(rows[i].label);
        for (int j = 0; j < kFeaturesPerPrint; ++j)
            table.matrix.X(static_cast<Eigen::Index>(i), j) = rows[i].values[j];
    }
    write_features_csv(out_path, table);
    return table;
}

}  // namespace ridgeline
