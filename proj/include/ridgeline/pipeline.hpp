#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ridgeline/config.hpp"
#include "ridgeline/dataset.hpp"
#include "ridgeline/io.hpp"

namespace ridgeline {

/// The 12 or 24 barcodes of one print, from whichever sources its record
/// carries. `metrics` restricts the minutiae sources.
std::vector<LabeledBarcode> compute_print_barcodes(const PrintRecord& record,
                                                   const PipelineConfig& cfg);

struct CacheStats {
    int computed = 0;
    int skipped = 0;   // artifact already present and valid
    int failed = 0;    // per-print failures, logged and skipped
};

/// Computes and caches per-print barcode files under cfg.barcodes_dir().
/// Existing files that validate against the schema are skipped unless
/// `force`; corrupt ones are recomputed. Writes are atomic.
CacheStats cache_barcodes(const Manifest& manifest, const PipelineConfig& cfg, bool force,
                          int workers);

/// Builds the per-print 552-feature table from cached barcodes and writes the
/// feature CSV. Throws DataError naming the prerequisite command when caches
/// are missing. Skips entirely when the file exists unless `force`.
FeatureTable cache_features(const Manifest& manifest, const PipelineConfig& cfg, bool force);

std::filesystem::path barcode_cache_path(const PipelineConfig& cfg, const std::string& print_id);

}  // namespace ridgeline
