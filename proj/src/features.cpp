#include "ridgeline/features.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "ridgeline/errors.hpp"

namespace ridgeline {

namespace {

double y_max_of(const Barcode& bc) {
    double m = bc.bars.front().death;
    for (const Bar& b : bc.bars) m = std::max(m, b.death);
    return m;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Sample standard deviation; 0 for a single value.
double sd_of(const std::vector<double>& v) {
    size_t n = v.size();
    if (n < 2) return 0.0;
    double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

std::array<double, 6> polynomial_features(const Barcode& bc) {
    if (bc.empty()) return {};
    const double n = static_cast<double>(bc.size());
    const double ymax = y_max_of(bc);
    double f1 = 0.0, f3 = 0.0, f5 = 0.0;
    for (const Bar& b : bc.bars) {
        double len = b.death - b.birth;
        double tail = ymax - b.death;
        f1 += len;
        f3 += tail * len;
        f5 += tail * tail * len * len * len * len;
    }
    return {f1, n * f1, f3, n * f3, f5, n * f5};
}

std::array<double, 5> regression_features(const Barcode& bc) {
    if (bc.empty()) return {};
    const int n = static_cast<int>(bc.size());
    std::vector<double> deaths;
    deaths.reserve(n);
    for (const Bar& b : bc.bars) deaths.push_back(b.death);
    std::sort(deaths.begin(), deaths.end(), std::greater<>());

    // Least-squares fit of the descending death curve against rank 1..n.
    // With fewer points than coefficients, fit the largest exact degree and
    // zero-pad so the feature count stays fixed.
    auto fit = [&](int degree) {
        int d = std::min(degree, n - 1);
        Eigen::MatrixXd vander(n, d + 1);
        Eigen::VectorXd z(n);
        for (int i = 0; i < n; ++i) {
            double t = 1.0;
            for (int k = 0; k <= d; ++k) {
                vander(i, k) = t;
                t *= static_cast<double>(i + 1);
            }
            z(i) = deaths[i];
        }
        Eigen::VectorXd c = vander.colPivHouseholderQr().solve(z);
        std::vector<double> coeffs(degree + 1, 0.0);
        for (int k = 0; k <= d; ++k) coeffs[k] = c(k);
        return coeffs;
    };
    std::vector<double> lin = fit(1);
    std::vector<double> quad = fit(2);
    return {lin[0], lin[1], quad[0], quad[1], quad[2]};
}

std::array<double, 12> statistical_features(const Barcode& bc) {
    if (bc.empty()) return {};
    const double ymax = y_max_of(bc);
    std::vector<double> births, deaths, tails, lengths;
    for (const Bar& b : bc.bars) {
        births.push_back(b.birth);
        deaths.push_back(b.death);
        tails.push_back(ymax - b.death);
        lengths.push_back(b.death - b.birth);
    }
    return {
        mean_of(births),  mean_of(deaths),  mean_of(tails),  mean_of(lengths),
        median_of(births), median_of(deaths), median_of(tails), median_of(lengths),
        sd_of(births),    sd_of(deaths),    sd_of(tails),    sd_of(lengths),
    };
}

std::array<double, kFeaturesPerBarcode> featurize_barcode(const Barcode& bc) {
    std::array<double, kFeaturesPerBarcode> out{};
    auto poly = polynomial_features(bc);
    auto reg = regression_features(bc);
    auto stat = statistical_features(bc);
    std::copy(poly.begin(), poly.end(), out.begin());
    std::copy(reg.begin(), reg.end(), out.begin() + 6);
    std::copy(stat.begin(), stat.end(), out.begin() + 11);
    return out;
}

const std::vector<std::string>& canonical_feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        out.reserve(kFeaturesPerPrint);
        for (std::string_view source : kBarcodeSources)
            for (std::string_view dim : {"H0", "H1"})
                for (std::string_view feat : kBarcodeFeatureNames)
                    out.push_back(std::string(source) + "." + std::string(dim) + "." +
                                  std::string(feat));
        return out;
    }();
    return names;
}

PrintFeatureRow featurize_print(const std::vector<LabeledBarcode>& barcodes,
                                const std::string& print_id, ClassLabel label) {
    PrintFeatureRow row;
    row.print_id = print_id;
    row.label = label;
    row.values.assign(kFeaturesPerPrint, 0.0);

    std::set<std::pair<std::string, int>> seen;
    for (const LabeledBarcode& lb : barcodes) {
        auto source_it = std::find(kBarcodeSources.begin(), kBarcodeSources.end(), lb.source);
        if (source_it == kBarcodeSources.end())
            throw InternalError("featurize_print: unknown barcode source '" + lb.source + "'");
        if (lb.barcode.dim != 0 && lb.barcode.dim != 1)
            throw InternalError("featurize_print: unsupported dimension for '" + lb.source + "'");
        if (!seen.insert({lb.source, lb.barcode.dim}).second)
            throw InternalError("featurize_print: duplicate barcode '" + lb.source + "' dim " +
                                std::to_string(lb.barcode.dim));
        size_t source_idx = static_cast<size_t>(source_it - kBarcodeSources.begin());
        size_t offset = (source_idx * 2 + static_cast<size_t>(lb.barcode.dim)) * kFeaturesPerBarcode;
        auto values = featurize_barcode(lb.barcode);
        std::copy(values.begin(), values.end(), row.values.begin() + offset);
    }
    return row;
}

}  // namespace ridgeline
