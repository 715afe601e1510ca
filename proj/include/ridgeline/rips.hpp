#pragma once

#include <optional>
#include <vector>

#include "ridgeline/barcode.hpp"
#include "ridgeline/minutiae.hpp"

namespace ridgeline {

/// H0/H1 persistence of the Vietoris-Rips filtration on a distance matrix.
///
/// An edge {i,j} enters the filtration at dm(i,j); a triangle at the max of
/// its three edges. Simplices with value > max_scale are excluded entirely.
/// max_scale defaults to the largest pairwise distance. Classes alive at
/// max_scale are capped there (scale_cap of both barcodes).
///
/// Throws DataError on an empty matrix.
BarcodePair rips_persistence(const DistanceMatrix& dm,
                             std::optional<double> max_scale = std::nullopt);

/// The 12 minutiae-based barcodes of one print: H0 and H1 under each of the
/// six metrics, labeled with the metric names.
std::vector<LabeledBarcode> minutiae_barcode_suite(const MinutiaCloud& raw,
                                                   std::optional<double> max_scale = std::nullopt);

}  // namespace ridgeline
