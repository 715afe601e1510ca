#pragma once

#include <cstdint>
#include <filesystem>

#include "ridgeline/dataset.hpp"

namespace ridgeline {

/// Knobs of the seeded synthetic corpus generator. All randomness flows from
/// `seed`; equal params produce byte-identical output trees.
struct SynthParams {
    int arch_count = 20;
    int loop_count = 20;
    int whorl_count = 20;
    int image_size = 96;          // square images
    int minutiae_min = 40;
    int minutiae_max = 70;
    double ridge_freq = 8.0;      // ridges across the unit square
    double orient_jitter_deg = 10.0;
    double pos_jitter_px = 1.5;
    double noise_amp = 0.15;      // additive image noise amplitude
    std::uint64_t seed = 42;
};

/// Preset mirroring the 5.3% / 58.4% / 36.3% arch/loop/whorl mix for
/// imbalance testing. Counts are rounded to sum to `total`.
SynthParams sd27_mix_params(int total, std::uint64_t seed);

/// A per-print ridge phase field. Image value at unit-square position (x, y)
/// is 0.5 * (1 + cos(2 pi freq phase(x, y))); ridge orientation follows the
/// level sets of the phase.
struct RidgeField {
    ClassLabel label = ClassLabel::Arch;
    // arch bump
    double arch_amp = 0.3;
    double arch_sigma = 0.18;
    double arch_x0 = 0.5;
    // whorl / loop core
    double core_x = 0.5;
    double core_y = 0.5;
    double spiral = 0.1;
    double blend_tau = 0.08;

    double phase(double x, double y) const;
    /// Analytic ridge tangent at (x, y), degrees in [0, 360): the direction
    /// orthogonal to the phase gradient.
    double tangent_deg(double x, double y) const;
};

/// One print's generated pieces, exposed so tests can replay the generator
/// deterministically.
struct SynthPrint {
    RidgeField field;
    MinutiaCloud cloud;
    GrayImage image;  // 8-bit quantized values, 0..255
};

/// Deterministic single-print generation; print_index selects the per-print
/// random stream within the corpus seed.
SynthPrint synth_print(const SynthParams& params, ClassLabel label, int print_index,
                       const std::string& print_id);

/// Generates the corpus under out_dir (manifest.csv, minutiae/*.csv,
/// images/*.pgm) and returns the manifest. Throws ConfigError on a zero
/// total count.
Manifest generate_synthetic(const SynthParams& params, const std::filesystem::path& out_dir);

}  // namespace ridgeline
