#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ridgeline/barcode.hpp"
#include "ridgeline/class_label.hpp"
#include "ridgeline/learning.hpp"

namespace ridgeline {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

/// One serialized bar. The barcode CSV schema is
///   # ridgeline.barcodes.v1
///   print_id,source,dim,birth,death
/// and the JSON schema is {"schema": "ridgeline.barcodes.v1", "records": [...]}.
struct BarcodeRecord {
    std::string print_id;
    std::string source;
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;
};

inline constexpr std::string_view kBarcodeSchema = "ridgeline.barcodes.v1";
inline constexpr std::string_view kFeatureSchema = "ridgeline.features.v1";

std::vector<BarcodeRecord> flatten_barcodes(const std::string& print_id,
                                            const std::vector<LabeledBarcode>& barcodes);

void write_barcodes_csv(const std::filesystem::path& path, std::span<const BarcodeRecord> records);
std::vector<BarcodeRecord> read_barcodes_csv(const std::filesystem::path& path);

void write_barcodes_json(const std::filesystem::path& path, std::span<const BarcodeRecord> records);
std::vector<BarcodeRecord> read_barcodes_json(const std::filesystem::path& path);

/// Regroups one print's records into labeled barcodes (bars in file order,
/// scale_cap left 0; featurization only needs the bars).
std::vector<LabeledBarcode> barcodes_from_records(std::span<const BarcodeRecord> records);

/// Feature matrix plus identity columns, as stored in the feature CSV:
///   # ridgeline.features.v1
///   print_id,class,<552 canonical names...>
struct FeatureTable {
    std::vector<std::string> print_ids;
    std::vector<ClassLabel> labels;
    FeatureMatrix matrix;
};

void write_features_csv(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_features_csv(const std::filesystem::path& path);

void write_features_json(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_features_json(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames into place, so readers never
/// see partial artifacts.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace ridgeline
