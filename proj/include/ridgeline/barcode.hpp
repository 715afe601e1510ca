#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace ridgeline {

/// One persistence interval. birth <= death, both finite: classes still alive
/// at the end of a filtration are capped at the barcode's scale_cap.
struct Bar {
    double birth = 0.0;
    double death = 0.0;

    double length() const { return death - birth; }
    friend bool operator==(const Bar&, const Bar&) = default;
};

/// Multiset of bars in one homological dimension. Bars from finite
/// birth/death pairings with zero length are dropped; capped bars are always
/// kept (a component alive at the end is a real feature even when its bar is
/// degenerate).
struct Barcode {
    int dim = 0;
    double scale_cap = 0.0;
    std::vector<Bar> bars;

    size_t size() const { return bars.size(); }
    bool empty() const { return bars.empty(); }
};

/// H0 and H1 of one filtration run.
struct BarcodePair {
    Barcode h0;
    Barcode h1;
};

/// A barcode tagged with the print-level source it came from (metric name or
/// image-transform name).
struct LabeledBarcode {
    std::string source;
    Barcode barcode;
};

/// Canonical source order: the six minutiae metrics, then the six image
/// transforms. Feature vectors and serialized tables all follow this order.
inline constexpr std::array<std::string_view, 12> kBarcodeSources = {
    "unoriented", "d1", "d1_13", "d1_23", "d2", "d3",
    "surface", "x_slant", "y_slant", "thr_x_slant", "thr_y_slant", "thr_xy_slant",
};

inline constexpr std::array<std::string_view, 6> kMinutiaeSources = {
    "unoriented", "d1", "d1_13", "d1_23", "d2", "d3"};

inline constexpr std::array<std::string_view, 6> kImageSources = {
    "surface", "x_slant", "y_slant", "thr_x_slant", "thr_y_slant", "thr_xy_slant"};

bool is_minutiae_source(std::string_view source);
bool is_image_source(std::string_view source);

/// Bars sorted by (birth, death) for multiset comparison.
std::vector<Bar> sorted_bars(const Barcode& bc);

}  // namespace ridgeline
