#include "ridgeline/barcode.hpp"

#include <algorithm>

namespace ridgeline {

bool is_minutiae_source(std::string_view source) {
    return std::find(kMinutiaeSources.begin(), kMinutiaeSources.end(), source) !=
           kMinutiaeSources.end();
}

bool is_image_source(std::string_view source) {
    return std::find(kImageSources.begin(), kImageSources.end(), source) != kImageSources.end();
}

std::vector<Bar> sorted_bars(const Barcode& bc) {
    std::vector<Bar> bars = bc.bars;
    std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return bars;
}

}  // namespace ridgeline
