#include "ridgeline/config.hpp"

#include <cstdlib>

#include "csv_util.hpp"
#include "ridgeline/errors.hpp"
#include "ridgeline/parallel.hpp"

namespace ridgeline {

using detail::trim;

std::filesystem::path PipelineConfig::dataset_dir() const { return out_dir / "synth"; }

std::filesystem::path PipelineConfig::manifest_path() const {
    return manifest ? *manifest : dataset_dir() / "manifest.csv";
}

std::filesystem::path PipelineConfig::barcodes_dir() const { return out_dir / "barcodes"; }

std::filesystem::path PipelineConfig::features_path() const { return out_dir / "features.csv"; }

std::filesystem::path PipelineConfig::reports_dir() const { return out_dir / "reports"; }

namespace {

long parse_long(const std::string& value, const std::string& key) {
    try {
        size_t pos = 0;
        long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': expected an integer, got '" + value + "'");
    }
}

double parse_real(const std::string& value, const std::string& key) {
    double v;
    if (!detail::try_parse_double(value, v))
        throw ConfigError("config: key '" + key + "': expected a number, got '" + value + "'");
    return v;
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
    PipelineConfig cfg;
    bool synth_sd27 = false;
    int synth_total = 60;

    auto lines = [&] {
        try {
            return detail::read_lines(path, "config");
        } catch (const DataError& e) {
            throw ConfigError(e.what());
        }
    }();

    for (size_t li = 0; li < lines.size(); ++li) {
        std::string line = trim(lines[li]);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(li + 1) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_long(value, key));
        } else if (key == "workers") {
            long w = parse_long(value, key);
            if (w < 0) throw ConfigError("config: workers must be >= 0");
            cfg.workers = static_cast<int>(w);
        } else if (key == "manifest") {
            cfg.manifest = std::filesystem::path(value);
        } else if (key == "metrics") {
            cfg.metrics.clear();
            for (const std::string& name : detail::split_csv_line(value)) {
                auto kind = metric_from_name(trim(name));
                if (!kind) throw ConfigError("config: unknown metric '" + trim(name) + "'");
                cfg.metrics.push_back(*kind);
            }
        } else if (key == "rips_max_scale") {
            if (value == "auto")
                cfg.rips_max_scale.reset();
            else
                cfg.rips_max_scale = parse_real(value, key);
        } else if (key == "normalization") {
            if (value == "fold_local")
                cfg.normalization = NormalizationMode::FoldLocal;
            else if (value == "global")
                cfg.normalization = NormalizationMode::Global;
            else
                throw ConfigError("config: normalization must be fold_local or global");
        } else if (key == "ridge_lambda_scale") {
            cfg.ridge_lambda_scale = parse_real(value, key);
        } else if (key == "prune_lo") {
            cfg.prune_lo = static_cast<int>(parse_long(value, key));
        } else if (key == "prune_hi") {
            cfg.prune_hi = static_cast<int>(parse_long(value, key));
        } else if (key == "groups") {
            cfg.groups.clear();
            for (const std::string& name : detail::split_csv_line(value)) {
                auto g = group_from_name(trim(name));
                if (!g) throw ConfigError("config: unknown feature group '" + trim(name) + "'");
                cfg.groups.push_back(*g);
            }
        } else if (key == "barcode_format") {
            if (value != "csv" && value != "json")
                throw ConfigError("config: barcode_format must be csv or json");
            cfg.barcode_format = value;
        } else if (key == "synth_arch") {
            cfg.synth.arch_count = static_cast<int>(parse_long(value, key));
        } else if (key == "synth_loop") {
            cfg.synth.loop_count = static_cast<int>(parse_long(value, key));
        } else if (key == "synth_whorl") {
            cfg.synth.whorl_count = static_cast<int>(parse_long(value, key));
        } else if (key == "synth_class_mix") {
            if (value == "balanced")
                synth_sd27 = false;
            else if (value == "sd27")
                synth_sd27 = true;
            else
                throw ConfigError("config: synth_class_mix must be balanced or sd27");
        } else if (key == "synth_total") {
            synth_total = static_cast<int>(parse_long(value, key));
        } else if (key == "synth_image_size") {
            cfg.synth.image_size = static_cast<int>(parse_long(value, key));
        } else if (key == "synth_minutiae_min") {
            cfg.synth.minutiae_min = static_cast<int>(parse_long(value, key));
        } else if (key == "synth_minutiae_max") {
            cfg.synth.minutiae_max = static_cast<int>(parse_long(value, key));
        } else if (key == "synth_ridge_freq") {
            cfg.synth.ridge_freq = parse_real(value, key);
        } else if (key == "synth_orient_jitter_deg") {
            cfg.synth.orient_jitter_deg = parse_real(value, key);
        } else if (key == "synth_pos_jitter_px") {
            cfg.synth.pos_jitter_px = parse_real(value, key);
        } else if (key == "synth_noise_amp") {
            cfg.synth.noise_amp = parse_real(value, key);
        } else {
            throw ConfigError("config: line " + std::to_string(li + 1) + ": unknown key '" + key +
                              "'");
        }
    }

    if (synth_sd27) {
        SynthParams mixed = sd27_mix_params(synth_total, cfg.seed);
        cfg.synth.arch_count = mixed.arch_count;
        cfg.synth.loop_count = mixed.loop_count;
        cfg.synth.whorl_count = mixed.whorl_count;
    }
    cfg.synth.seed = cfg.seed;
    validate_config(cfg);
    return cfg;
}

void validate_config(const PipelineConfig& cfg) {
    if (cfg.workers < 0) throw ConfigError("config: workers must be >= 0");
    if (cfg.prune_lo < 1 || cfg.prune_hi < cfg.prune_lo)
        throw ConfigError("config: prune window must satisfy 1 <= prune_lo <= prune_hi");
    if (cfg.ridge_lambda_scale < 0.0) throw ConfigError("config: ridge_lambda_scale must be >= 0");
    if (cfg.rips_max_scale && *cfg.rips_max_scale <= 0.0)
        throw ConfigError("config: rips_max_scale must be positive or auto");
    if (cfg.metrics.empty()) throw ConfigError("config: metrics must not be empty");
    if (cfg.groups.empty()) throw ConfigError("config: groups must not be empty");
    if (cfg.synth.arch_count < 0 || cfg.synth.loop_count < 0 || cfg.synth.whorl_count < 0)
        throw ConfigError("config: synthetic class counts must be >= 0");
    if (cfg.synth.minutiae_min < 1 || cfg.synth.minutiae_max < cfg.synth.minutiae_min)
        throw ConfigError("config: synthetic minutiae range is invalid");
    if (cfg.synth.image_size < 2) throw ConfigError("config: synth_image_size must be >= 2");
    if (cfg.synth.noise_amp < 0.0 || cfg.synth.orient_jitter_deg < 0.0 ||
        cfg.synth.pos_jitter_px < 0.0)
        throw ConfigError("config: synthetic noise levels must be >= 0");
}

int resolve_workers(std::optional<int> cli_flag, const PipelineConfig& cfg) {
    if (cli_flag && *cli_flag > 0) return *cli_flag;
    if (cfg.workers > 0) return cfg.workers;
    if (const char* env = std::getenv("RIDGELINE_WORKERS")) {
        try {
            int w = std::stoi(env);
            if (w > 0) return w;
        } catch (const std::exception&) {
            throw ConfigError("RIDGELINE_WORKERS must be a positive integer");
        }
    }
    return hardware_workers();
}

}  // namespace ridgeline
