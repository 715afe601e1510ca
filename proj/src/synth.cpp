#include "ridgeline/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ridgeline/errors.hpp"

namespace ridgeline {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Deterministic per-print stream: the corpus seed mixed with the print
/// index. Draw helpers avoid std::uniform_* so the byte stream is fixed by
/// the engine alone.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream)
        : engine_(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1))) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

struct Gradient {
    double gx = 0.0;
    double gy = 0.0;
};

Gradient arch_gradient(const RidgeField& f, double x, double y) {
    double u = (x - f.arch_x0) / f.arch_sigma;
    double bump = f.arch_amp * std::exp(-0.5 * u * u);
    (void)y;
    return {-bump * u / f.arch_sigma, 1.0};
}

double arch_phase(const RidgeField& f, double x, double y) {
    double u = (x - f.arch_x0) / f.arch_sigma;
    return y + f.arch_amp * std::exp(-0.5 * u * u);
}

}  // namespace

double RidgeField::phase(double x, double y) const {
    double dx = x - core_x;
    double dy = y - core_y;
    double r = std::hypot(dx, dy);
    switch (label) {
    case ClassLabel::Arch:
        return arch_phase(*this, x, y);
    case ClassLabel::Whorl:
        return r + spiral * (std::atan2(dy, dx) / kTwoPi);
    case ClassLabel::Loop: {
        // concentric about the core above it, arch flow below, blended
        double w = 1.0 / (1.0 + std::exp(-(core_y - y) / blend_tau));
        return w * r + (1.0 - w) * arch_phase(*this, x, y);
    }
    }
    throw InternalError("RidgeField::phase: bad label");
}

double RidgeField::tangent_deg(double x, double y) const {
    double dx = x - core_x;
    double dy = y - core_y;
    double r = std::hypot(dx, dy);
    Gradient g;
    switch (label) {
    case ClassLabel::Arch:
        g = arch_gradient(*this, x, y);
        break;
    case ClassLabel::Whorl: {
        if (r < 1e-9) {
            g = {1.0, 0.0};
        } else {
            g.gx = dx / r - spiral * dy / (kTwoPi * r * r);
            g.gy = dy / r + spiral * dx / (kTwoPi * r * r);
        }
        break;
    }
    case ClassLabel::Loop: {
        double w = 1.0 / (1.0 + std::exp(-(core_y - y) / blend_tau));
        double dw_dy = -w * (1.0 - w) / blend_tau;
        Gradient ga = arch_gradient(*this, x, y);
        double radial_x = r < 1e-9 ? 1.0 : dx / r;
        double radial_y = r < 1e-9 ? 0.0 : dy / r;
        g.gx = w * radial_x + (1.0 - w) * ga.gx;
        g.gy = dw_dy * (r - arch_phase(*this, x, y)) + w * radial_y + (1.0 - w) * ga.gy;
        break;
    }
    }
    // ridge direction is orthogonal to the phase gradient
    double deg = std::atan2(g.gx, -g.gy) * 180.0 / std::numbers::pi;
    deg = std::fmod(deg, 360.0);
    if (deg < 0.0) deg += 360.0;
    return deg;
}

SynthParams sd27_mix_params(int total, std::uint64_t seed) {
    SynthParams p;
    p.seed = seed;
    p.arch_count = std::max(1, static_cast<int>(std::lround(total * 0.053)));
    p.whorl_count = static_cast<int>(std::lround(total * 0.363));
    p.loop_count = total - p.arch_count - p.whorl_count;
    return p;
}

SynthPrint synth_print(const SynthParams& params, ClassLabel label, int print_index,
                       const std::string& print_id) {
    Rng rng(params.seed, static_cast<std::uint64_t>(print_index));

    SynthPrint print;
    RidgeField& field = print.field;
    field.label = label;
    field.arch_amp = rng.uniform(0.25, 0.4);
    field.arch_sigma = rng.uniform(0.15, 0.22);
    field.arch_x0 = rng.uniform(0.4, 0.6);
    field.blend_tau = 0.08;
    switch (label) {
    case ClassLabel::Arch:
        field.core_x = 0.5;
        field.core_y = 0.5;
        break;
    case ClassLabel::Loop:
        field.core_x = rng.uniform(0.45, 0.55);
        field.core_y = rng.uniform(0.35, 0.5);
        break;
    case ClassLabel::Whorl:
        field.core_x = rng.uniform(0.42, 0.58);
        field.core_y = rng.uniform(0.42, 0.58);
        field.spiral = rng.uniform(0.05, 0.15);
        break;
    }

    const int size = params.image_size;
    print.image = GrayImage(size, size);
    for (int r = 0; r < size; ++r) {
        double y = size > 1 ? static_cast<double>(r) / (size - 1) : 0.0;
        for (int c = 0; c < size; ++c) {
            double x = size > 1 ? static_cast<double>(c) / (size - 1) : 0.0;
            double v = 0.5 * (1.0 + std::cos(kTwoPi * params.ridge_freq * field.phase(x, y)));
            if (params.noise_amp > 0.0) v += params.noise_amp * rng.uniform(-1.0, 1.0);
            v = std::min(1.0, std::max(0.0, v));
            print.image.at(r, c) = std::lround(v * 255.0);
        }
    }

    print.cloud.print_id = print_id;
    int n = rng.uniform_int(params.minutiae_min, params.minutiae_max);
    double extent = static_cast<double>(size - 1);
    for (int i = 0; i < n; ++i) {
        double px = rng.uniform(0.0, extent);
        double py = rng.uniform(0.0, extent);
        if (params.pos_jitter_px > 0.0) {
            px += rng.uniform(-params.pos_jitter_px, params.pos_jitter_px);
            py += rng.uniform(-params.pos_jitter_px, params.pos_jitter_px);
            px = std::min(extent, std::max(0.0, px));
            py = std::min(extent, std::max(0.0, py));
        }
        double theta = field.tangent_deg(extent > 0.0 ? px / extent : 0.0,
                                         extent > 0.0 ? py / extent : 0.0);
        if (params.orient_jitter_deg > 0.0)
            theta += rng.uniform(-params.orient_jitter_deg, params.orient_jitter_deg);
        theta = std::fmod(theta, 360.0);
        if (theta < 0.0) theta += 360.0;
        print.cloud.points.push_back({px, py, theta});
    }
    return print;
}

Manifest generate_synthetic(const SynthParams& params, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    const int total = params.arch_count + params.loop_count + params.whorl_count;
    if (total <= 0) throw ConfigError("generate_synthetic: zero prints requested");
    if (params.arch_count < 0 || params.loop_count < 0 || params.whorl_count < 0)
        throw ConfigError("generate_synthetic: negative class count");
    if (params.minutiae_min < 1 || params.minutiae_max < params.minutiae_min)
        throw ConfigError("generate_synthetic: bad minutiae range");
    if (params.image_size < 2) throw ConfigError("generate_synthetic: image_size must be >= 2");

    fs::create_directories(out_dir / "minutiae");
    fs::create_directories(out_dir / "images");

    Manifest manifest;
    manifest.name = "synthetic";
    manifest.provenance = "seeded synthetic corpus, seed " + std::to_string(params.seed);

    int index = 0;
    auto emit_class = [&](ClassLabel label, int count) {
        for (int i = 0; i < count; ++i, ++index) {
            char id[16];
            std::snprintf(id, sizeof(id), "%c%04d", class_token(label), i + 1);
            SynthPrint print = synth_print(params, label, index, id);
            save_minutiae_csv(print.cloud, out_dir / "minutiae" / (std::string(id) + ".csv"));
            save_pgm(print.image, out_dir / "images" / (std::string(id) + ".pgm"));
            PrintRecord rec;
            rec.print_id = id;
            rec.label = label;
            rec.minutiae_path = fs::path("minutiae") / (std::string(id) + ".csv");
            rec.image_path = fs::path("images") / (std::string(id) + ".pgm");
            manifest.records.push_back(std::move(rec));
        }
    };
    emit_class(ClassLabel::Arch, params.arch_count);
    emit_class(ClassLabel::Loop, params.loop_count);
    emit_class(ClassLabel::Whorl, params.whorl_count);

    save_manifest(manifest, out_dir / "manifest.csv");
    // reload so the returned records carry resolved absolute paths
    return load_manifest(out_dir / "manifest.csv");
}

}  // namespace ridgeline
