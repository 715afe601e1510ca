#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ridgeline {

/// One expert-marked ridge termination/bifurcation: pixel position plus
/// orientation angle in degrees, [0, 360).
struct RawMinutia {
    double x = 0.0;
    double y = 0.0;
    double theta_deg = 0.0;
};

/// Minutia after per-print rescaling; all three coordinates lie in [0, 1].
struct NormalizedMinutia {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

struct MinutiaCloud {
    std::string print_id;
    std::vector<RawMinutia> points;
};

struct NormalizedCloud {
    std::string print_id;
    std::vector<NormalizedMinutia> points;
};

/// The six distance configurations on normalized clouds. Unoriented2D is plain
/// Euclidean distance on (x, y); the rest combine the spatial offset with the
/// circular angle offset.
enum class MetricKind {
    Unoriented2D,
    D1,          // |dx| + |dy| + theta_ij
    D1_OneThird, // (1/3)(|dx| + |dy|) + (2/3) theta_ij
    D1_TwoThirds,// (2/3)(|dx| + |dy|) + (1/3) theta_ij
    D2,          // sqrt(dx^2 + dy^2 + theta_ij^2)
    D3,          // cbrt(|dx|^3 + |dy|^3 + theta_ij^3)
};

inline constexpr std::array<MetricKind, 6> kAllMetrics = {
    MetricKind::Unoriented2D, MetricKind::D1,
    MetricKind::D1_OneThird,  MetricKind::D1_TwoThirds,
    MetricKind::D2,           MetricKind::D3,
};

std::string_view metric_name(MetricKind kind);
std::optional<MetricKind> metric_from_name(std::string_view name);

/// Symmetric pairwise distances with zero diagonal, stored dense row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(int n) : n_(n), entries_(static_cast<size_t>(n) * n, 0.0) {}

    int size() const { return n_; }
    double at(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, double d) {
        entries_[static_cast<size_t>(i) * n_ + j] = d;
        entries_[static_cast<size_t>(j) * n_ + i] = d;
    }
    /// Largest entry; 0 for a single point.
    double max_entry() const;

private:
    int n_ = 0;
    std::vector<double> entries_;
};

/// Rescales x and y to [0, 1] by the per-print min/max and divides angles by
/// the per-print max angle. A constant coordinate column maps to all zeros so
/// degenerate clouds still flow through the pipeline.
NormalizedCloud normalize_cloud(const MinutiaCloud& cloud);

/// Circular distance between two angles already scaled into [0, 1].
/// Result is in [0, 0.5].
double angular_distance(double theta_a, double theta_b);

double distance(MetricKind kind, const NormalizedMinutia& p, const NormalizedMinutia& q);

DistanceMatrix distance_matrix(const NormalizedCloud& cloud, MetricKind kind);

}  // namespace ridgeline
