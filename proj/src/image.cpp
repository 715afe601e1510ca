#include "ridgeline/image.hpp"

#include <algorithm>
#include <numeric>

#include "ridgeline/errors.hpp"

namespace ridgeline {

GrayImage invert_normalize(const GrayImage& img) {
    if (img.rows < 1 || img.cols < 1) throw DataError("invert_normalize: empty image");
    GrayImage out = img;
    out.stage = ImageStage::InvertedNormalized;
    auto [lo_it, hi_it] = std::minmax_element(img.values.begin(), img.values.end());
    double lo = *lo_it, hi = *hi_it;
    if (hi == lo) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        return out;
    }
    // v -> max - v flips the scale; the subsequent min/max rescale then maps
    // onto [0, 1], which together is (max - v) / (max - min).
    for (double& v : out.values) v = (hi - v) / (hi - lo);
    return out;
}

GrayImage slant(const GrayImage& img, SlantKind kind) {
    GrayImage out = img;
    if (out.stage != ImageStage::ThresholdedSlanted) out.stage = ImageStage::Slanted;
    for (int r = 0; r < img.rows; ++r) {
        double y = img.rows > 1 ? static_cast<double>(r) / (img.rows - 1) : 0.0;
        for (int c = 0; c < img.cols; ++c) {
            double x = img.cols > 1 ? static_cast<double>(c) / (img.cols - 1) : 0.0;
            double w = kind == SlantKind::X ? x : kind == SlantKind::Y ? y : x * y;
            out.at(r, c) = img.at(r, c) * w;
        }
    }
    return out;
}

GrayImage threshold_mean(const GrayImage& img) {
    GrayImage out = img;
    out.stage = ImageStage::ThresholdedSlanted;
    double mean = std::accumulate(img.values.begin(), img.values.end(), 0.0) /
                  static_cast<double>(img.values.size());
    for (double& v : out.values) v = v >= mean ? 1.0 : 0.0;
    return out;
}

}  // namespace ridgeline
