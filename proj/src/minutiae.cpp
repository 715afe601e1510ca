#include "ridgeline/minutiae.hpp"

#include <algorithm>
#include <cmath>

#include "ridgeline/errors.hpp"

namespace ridgeline {

std::string_view metric_name(MetricKind kind) {
    switch (kind) {
    case MetricKind::Unoriented2D: return "unoriented";
    case MetricKind::D1: return "d1";
    case MetricKind::D1_OneThird: return "d1_13";
    case MetricKind::D1_TwoThirds: return "d1_23";
    case MetricKind::D2: return "d2";
    case MetricKind::D3: return "d3";
    }
    return "?";
}

std::optional<MetricKind> metric_from_name(std::string_view name) {
    for (MetricKind kind : kAllMetrics)
        if (metric_name(kind) == name) return kind;
    return std::nullopt;
}

double DistanceMatrix::max_entry() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, v);
    return m;
}

namespace {

// (v - min) / (max - min), with a constant column collapsing to zeros.
void rescale_min_max(std::vector<double>& column) {
    auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
    double lo = *lo_it, hi = *hi_it;
    if (hi == lo) {
        std::fill(column.begin(), column.end(), 0.0);
        return;
    }
    for (double& v : column) v = (v - lo) / (hi - lo);
}

}  // namespace

NormalizedCloud normalize_cloud(const MinutiaCloud& cloud) {
    if (cloud.points.empty()) throw DataError("normalize_cloud: empty cloud '" + cloud.print_id + "'");
    size_t n = cloud.points.size();
    std::vector<double> xs(n), ys(n), thetas(n);
    for (size_t i = 0; i < n; ++i) {
        xs[i] = cloud.points[i].x;
        ys[i] = cloud.points[i].y;
        thetas[i] = cloud.points[i].theta_deg;
    }
    rescale_min_max(xs);
    rescale_min_max(ys);
    // Angles divide by the observed maximum (not the full circle).
    double theta_max = *std::max_element(thetas.begin(), thetas.end());
    if (theta_max == 0.0)
        std::fill(thetas.begin(), thetas.end(), 0.0);
    else
        for (double& t : thetas) t /= theta_max;

    NormalizedCloud out;
    out.print_id = cloud.print_id;
    out.points.resize(n);
    for (size_t i = 0; i < n; ++i) out.points[i] = {xs[i], ys[i], thetas[i]};
    return out;
}

double angular_distance(double theta_a, double theta_b) {
    double d = std::abs(theta_a - theta_b);
    return d <= 0.5 ? d : 1.0 - d;
}

double distance(MetricKind kind, const NormalizedMinutia& p, const NormalizedMinutia& q) {
    double dx = std::abs(p.x - q.x);
    double dy = std::abs(p.y - q.y);
    switch (kind) {
    case MetricKind::Unoriented2D:
        return std::sqrt(dx * dx + dy * dy);
    case MetricKind::D1:
        return dx + dy + angular_distance(p.theta, q.theta);
    case MetricKind::D1_OneThird:
        return (dx + dy) / 3.0 + 2.0 / 3.0 * angular_distance(p.theta, q.theta);
    case MetricKind::D1_TwoThirds:
        return 2.0 / 3.0 * (dx + dy) + angular_distance(p.theta, q.theta) / 3.0;
    case MetricKind::D2: {
        double t = angular_distance(p.theta, q.theta);
        return std::sqrt(dx * dx + dy * dy + t * t);
    }
    case MetricKind::D3: {
        // l^3 needs absolute differences to stay a metric.
        double t = angular_distance(p.theta, q.theta);
        return std::cbrt(dx * dx * dx + dy * dy * dy + t * t * t);
    }
    }
    throw InternalError("distance: unknown metric kind");
}

DistanceMatrix distance_matrix(const NormalizedCloud& cloud, MetricKind kind) {
    int n = static_cast<int>(cloud.points.size());
    DistanceMatrix dm(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dm.set(i, j, distance(kind, cloud.points[i], cloud.points[j]));
    return dm;
}

}  // namespace ridgeline
