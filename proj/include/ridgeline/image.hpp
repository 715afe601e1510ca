#pragma once

#include <vector>

namespace ridgeline {

/// Where in the transform chain a matrix sits. Purely informational; the
/// transforms validate shape, not provenance.
enum class ImageStage {
    Raw,
    InvertedNormalized,
    Slanted,
    ThresholdedSlanted,
};

/// Grayscale image held as a real-valued row-major matrix.
struct GrayImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;
    ImageStage stage = ImageStage::Raw;

    GrayImage() = default;
    GrayImage(int r, int c, double fill = 0.0, ImageStage s = ImageStage::Raw)
        : rows(r), cols(c), values(static_cast<size_t>(r) * c, fill), stage(s) {}

    double at(int r, int c) const { return values[static_cast<size_t>(r) * cols + c]; }
    double& at(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }
    size_t pixel_count() const { return values.size(); }
};

enum class SlantKind { X, Y, XY };

/// Flips the value scale (background black) and rescales into [0, 1].
/// A constant image maps to all zeros.
GrayImage invert_normalize(const GrayImage& img);

/// Multiplies entry (r, c) by x, y, or x*y where x = c/(cols-1) and
/// y = r/(rows-1) (0 when the dimension is 1).
GrayImage slant(const GrayImage& img, SlantKind kind);

/// Binarizes at the matrix mean; values >= mean map to 1.
GrayImage threshold_mean(const GrayImage& img);

}  // namespace ridgeline
