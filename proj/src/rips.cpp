#include "ridgeline/rips.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ridgeline/errors.hpp"

namespace ridgeline {

namespace {

struct Edge {
    double value;
    int32_t i, j;  // i < j

    bool operator<(const Edge& o) const {
        if (value != o.value) return value < o.value;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

struct Triangle {
    double value;
    int32_t i, j, k;  // i < j < k

    bool operator<(const Triangle& o) const {
        if (value != o.value) return value < o.value;
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        return k < o.k;
    }
};

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    /// False when already in the same component (the edge is positive).
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep the lower root, deterministic
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

/// Z/2 sum of two sorted index columns (symmetric difference).
std::vector<int32_t> xor_columns(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
    std::vector<int32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void sort_bars(Barcode& bc) {
    std::sort(bc.bars.begin(), bc.bars.end(), [](const Bar& a, const Bar& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
}

}  // namespace

BarcodePair rips_persistence(const DistanceMatrix& dm, std::optional<double> max_scale_opt) {
    const int n = dm.size();
    if (n == 0) throw DataError("rips_persistence: empty distance matrix");
    const double cap = max_scale_opt.value_or(dm.max_entry());
    if (max_scale_opt && *max_scale_opt <= 0.0)
        throw ConfigError("rips_persistence: max_scale must be positive");

    // Edges with value <= cap, in filtration order (value, then vertex lex).
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int32_t i = 0; i < n; ++i)
        for (int32_t j = i + 1; j < n; ++j)
            if (dm.at(i, j) <= cap) edges.push_back({dm.at(i, j), i, j});
    std::sort(edges.begin(), edges.end());
    const int n_edges = static_cast<int>(edges.size());

    // H0 by Kruskal: a merging edge kills one component at its value; an edge
    // that closes a cycle is positive and is a candidate H1 birth.
    Barcode h0{0, cap, {}};
    std::vector<char> edge_positive(n_edges, 0);
    {
        UnionFind uf(n);
        for (int r = 0; r < n_edges; ++r) {
            if (uf.merge(edges[r].i, edges[r].j)) {
                if (edges[r].value > 0.0) h0.bars.push_back({0.0, edges[r].value});
            } else {
                edge_positive[r] = 1;
            }
        }
        int components = n;
        for (int r = 0; r < n_edges; ++r)
            if (!edge_positive[r]) --components;
        // Capped bars are kept even when degenerate (a component alive at the
        // final scale is a real feature).
        for (int c = 0; c < components; ++c) h0.bars.push_back({0.0, cap});
    }

    // H1: reduce triangle boundary columns over edge rows. Edge rows are
    // indexed by filtration rank; each triangle pairs with the positive edge
    // left as its pivot. Edge columns themselves are never reduced -- the
    // union-find pass already decided every vertex/edge pairing, which is the
    // usual twist/clearing shortcut.
    Barcode h1{1, cap, {}};
    {
        std::vector<int32_t> edge_rank(static_cast<size_t>(n) * n, -1);
        for (int r = 0; r < n_edges; ++r)
            edge_rank[static_cast<size_t>(edges[r].i) * n + edges[r].j] = r;

        std::vector<Triangle> triangles;
        for (int32_t i = 0; i < n; ++i) {
            for (int32_t j = i + 1; j < n; ++j) {
                double dij = dm.at(i, j);
                if (dij > cap) continue;
                for (int32_t k = j + 1; k < n; ++k) {
                    double value = std::max({dij, dm.at(i, k), dm.at(j, k)});
                    if (value <= cap) triangles.push_back({value, i, j, k});
                }
            }
        }
        std::sort(triangles.begin(), triangles.end());

        std::vector<int32_t> pivot_owner(n_edges, -1);
        std::vector<std::vector<int32_t>> reduced;
        std::vector<char> edge_paired(n_edges, 0);
        std::vector<int32_t> column;
        for (const Triangle& t : triangles) {
            column = {edge_rank[static_cast<size_t>(t.i) * n + t.j],
                      edge_rank[static_cast<size_t>(t.i) * n + t.k],
                      edge_rank[static_cast<size_t>(t.j) * n + t.k]};
            std::sort(column.begin(), column.end());
            while (!column.empty()) {
                int32_t owner = pivot_owner[column.back()];
                if (owner < 0) break;
                column = xor_columns(column, reduced[owner]);
            }
            if (column.empty()) continue;  // creates a 2-cycle; not tracked
            int32_t low = column.back();
            pivot_owner[low] = static_cast<int32_t>(reduced.size());
            reduced.push_back(std::move(column));
            column.clear();
            edge_paired[low] = 1;
            double birth = edges[low].value;
            if (birth < t.value) h1.bars.push_back({birth, t.value});
        }
        for (int r = 0; r < n_edges; ++r)
            if (edge_positive[r] && !edge_paired[r]) h1.bars.push_back({edges[r].value, cap});
    }

    sort_bars(h0);
    sort_bars(h1);
    return {std::move(h0), std::move(h1)};
}

std::vector<LabeledBarcode> minutiae_barcode_suite(const MinutiaCloud& raw,
                                                   std::optional<double> max_scale) {
    NormalizedCloud cloud = normalize_cloud(raw);
    std::vector<LabeledBarcode> out;
    out.reserve(12);
    for (MetricKind kind : kAllMetrics) {
        BarcodePair pair = rips_persistence(distance_matrix(cloud, kind), max_scale);
        out.push_back({std::string(metric_name(kind)), std::move(pair.h0)});
        out.push_back({std::string(metric_name(kind)), std::move(pair.h1)});
    }
    return out;
}

}  // namespace ridgeline
