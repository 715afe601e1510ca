#pragma once

#include <vector>

#include "ridgeline/barcode.hpp"
#include "ridgeline/image.hpp"

namespace ridgeline {

enum class LevelSetDirection { Sublevel, Superlevel };

/// H0/H1 persistence of the vertex-construction cubical filtration of an
/// image: pixels are vertices carrying their values, edges join 4-adjacent
/// pixels at the max of their endpoints, squares enter at the max of their
/// four pixels.
///
/// Superlevel filtrations are computed as the sublevel filtration of the
/// negated matrix and reported on that negated increasing scale. Classes
/// alive at the end are capped at the maximal filtration value present.
BarcodePair cubical_persistence(const GrayImage& img, LevelSetDirection direction);

/// The 12 image-based barcodes of one raw grayscale print: superlevel H0/H1
/// of the inverted-normalized surface and its x/y slants, and sublevel H0/H1
/// of the mean-thresholded surface after x, y, and xy slants.
std::vector<LabeledBarcode> image_barcode_suite(const GrayImage& raw);

}  // namespace ridgeline
