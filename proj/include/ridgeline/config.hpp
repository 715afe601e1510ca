#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ridgeline/learning.hpp"
#include "ridgeline/synth.hpp"

namespace ridgeline {

/// Pipeline configuration, loaded from a `key = value` text file (see
/// load_config). Unknown keys are rejected.
struct PipelineConfig {
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 42;
    int workers = 0;  // 0 = hardware concurrency

    /// Manifest to process; defaults to the synthesized corpus under out_dir.
    std::optional<std::filesystem::path> manifest;

    std::vector<MetricKind> metrics{kAllMetrics.begin(), kAllMetrics.end()};
    std::optional<double> rips_max_scale;  // nullopt = max pairwise distance

    NormalizationMode normalization = NormalizationMode::FoldLocal;
    double ridge_lambda_scale = kDefaultLambdaScale;
    int prune_lo = 70;
    int prune_hi = 90;
    std::vector<FeatureGroup> groups{kAllGroups.begin(), kAllGroups.end()};

    std::string barcode_format = "csv";  // csv | json
    SynthParams synth;

    std::filesystem::path dataset_dir() const;
    std::filesystem::path manifest_path() const;
    std::filesystem::path barcodes_dir() const;
    std::filesystem::path features_path() const;
    std::filesystem::path reports_dir() const;
};

/// Parses the config file: one `key = value` per line, `#` comments, blank
/// lines ignored. Throws ConfigError on unknown keys or invalid values.
PipelineConfig load_config(const std::filesystem::path& path);

/// Validates ranges and cross-field consistency; throws ConfigError.
void validate_config(const PipelineConfig& cfg);

/// Worker count resolution: explicit CLI flag > config file > the
/// RIDGELINE_WORKERS environment variable > hardware concurrency.
int resolve_workers(std::optional<int> cli_flag, const PipelineConfig& cfg);

}  // namespace ridgeline
