#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ridgeline/barcode.hpp"
#include "ridgeline/class_label.hpp"

namespace ridgeline {

/// Per-barcode feature names in canonical order: six polynomial sums, the
/// 2 + 3 coefficients of the degree-1 and degree-2 endpoint fits, then the
/// twelve bar statistics.
inline constexpr std::array<std::string_view, 23> kBarcodeFeatureNames = {
    "f1", "f2", "f3", "f4", "f5", "f6",
    "c0_1", "c1_1", "c0_2", "c1_2", "c2_2",
    "g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "g9", "g10", "g11", "g12",
};

inline constexpr int kFeaturesPerBarcode = 23;
inline constexpr int kBarcodesPerPrint = 24;  // 12 sources x 2 dimensions
inline constexpr int kFeaturesPerPrint = kFeaturesPerBarcode * kBarcodesPerPrint;  // 552

/// f1..f6. With n bars, left endpoints x_i, right endpoints y_i and
/// y_max = max y_i:
///   f1 = sum (y_i - x_i)               f2 = n * f1
///   f3 = sum (y_max - y_i)(y_i - x_i)  f4 = n * f3
///   f5 = sum (y_max - y_i)^2 (y_i - x_i)^4   f6 = n * f5
/// Empty barcode -> all zeros.
std::array<double, 6> polynomial_features(const Barcode& bc);

/// Least-squares coefficients of degree-1 and degree-2 fits to the death
/// values sorted descending, against abscissa 1..n: (c0_1, c1_1, c0_2, c1_2,
/// c2_2). With fewer points than coefficients the largest exact degree is
/// fitted and the higher coefficients zero-padded.
std::array<double, 5> regression_features(const Barcode& bc);

/// g1..g12: mean, median and sample standard deviation of {x_i}, {y_i},
/// {y_max - y_i}, {y_i - x_i}. Empty barcode -> zeros; single bar -> SDs 0.
std::array<double, 12> statistical_features(const Barcode& bc);

/// All 23 features of one barcode, ordered as kBarcodeFeatureNames.
std::array<double, kFeaturesPerBarcode> featurize_barcode(const Barcode& bc);

/// The 552 canonical per-print feature names, "source.dim.feature"
/// (e.g. "d2.H1.g8"), ordered by kBarcodeSources, H0 before H1.
const std::vector<std::string>& canonical_feature_names();

struct PrintFeatureRow {
    std::string print_id;
    ClassLabel label = ClassLabel::Arch;
    std::vector<double> values;  // length kFeaturesPerPrint, canonical order
};

/// Assembles a print's 552-feature row from its labeled barcodes. Sources
/// absent from the input contribute zeros; an unknown source, a dim outside
/// {0,1}, or a duplicate (source, dim) is a pipeline wiring bug and throws
/// InternalError.
PrintFeatureRow featurize_print(const std::vector<LabeledBarcode>& barcodes,
                                const std::string& print_id, ClassLabel label);

}  // namespace ridgeline
