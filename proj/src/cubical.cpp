#include "ridgeline/cubical.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ridgeline/errors.hpp"

namespace ridgeline {

namespace {

// Vertex-construction complex on an R x C image: vertices are pixels, edges
// join 4-neighbors at the max of their endpoints, squares are 2x2 pixel
// blocks at the max of the four. Edges are identified by their (low, high)
// pixel-index pair; horizontal then vertical interleave naturally under the
// lexicographic order.
struct GridEdge {
    double value;
    int32_t u, v;  // pixel indices, u < v

    bool operator<(const GridEdge& o) const {
        if (value != o.value) return value < o.value;
        if (u != o.u) return u < o.u;
        return v < o.v;
    }
};

struct GridSquare {
    double value;
    int32_t anchor;  // top-left pixel index (smallest of the four)

    bool operator<(const GridSquare& o) const {
        if (value != o.value) return value < o.value;
        return anchor < o.anchor;
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

    void link(int root_child, int root_parent) { parent_[root_child] = root_parent; }

private:
    std::vector<int> parent_;
};

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

BarcodePair sublevel_persistence(const std::vector<double>& values, int rows, int cols) {
    const int n = rows * cols;
    const double cap = *std::max_element(values.begin(), values.end());

    std::vector<GridEdge> edges;
    edges.reserve(static_cast<size_t>(rows) * (cols - 1) + static_cast<size_t>(rows - 1) * cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int32_t u = r * cols + c;
            if (c + 1 < cols)
                edges.push_back({std::max(values[u], values[u + 1]), u, u + 1});
            if (r + 1 < rows)
                edges.push_back({std::max(values[u], values[u + cols]), u, static_cast<int32_t>(u + cols)});
        }
    }
    std::sort(edges.begin(), edges.end());
    const int n_edges = static_cast<int>(edges.size());

    // H0 with the elder rule: each component is born at its lowest pixel; a
    // merging edge kills the younger component (tie: the one whose minimal
    // vertex has the larger index).
    Barcode h0{0, cap, {}};
    std::vector<char> edge_positive(n_edges, 0);
    {
        UnionFind uf(n);
        std::vector<double> birth(values);       // birth value at each root
        std::vector<int32_t> birth_vertex(n);    // minimal vertex of the component
        std::iota(birth_vertex.begin(), birth_vertex.end(), 0);
        for (int e = 0; e < n_edges; ++e) {
            int a = uf.find(edges[e].u);
            int b = uf.find(edges[e].v);
            if (a == b) {
                edge_positive[e] = 1;
                continue;
            }
            bool a_elder = birth[a] < birth[b] ||
                           (birth[a] == birth[b] && birth_vertex[a] < birth_vertex[b]);
            int elder = a_elder ? a : b;
            int young = a_elder ? b : a;
            if (birth[young] < edges[e].value) h0.bars.push_back({birth[young], edges[e].value});
            uf.link(young, elder);
        }
        std::vector<char> seen(n, 0);
        for (int v = 0; v < n; ++v) {
            int root = uf.find(v);
            if (!seen[root]) {
                seen[root] = 1;
                h0.bars.push_back({birth[root], cap});
            }
        }
    }

    // H1: reduce square columns over edge rows. Edge columns are never
    // reduced; the union-find pass already fixed the vertex/edge pairings
    // (twist/clearing shortcut).
    Barcode h1{1, cap, {}};
    if (rows > 1 && cols > 1) {
        // edge rank lookup: horizontal edges keyed by left pixel, vertical by top pixel
        std::vector<int32_t> h_rank(n, -1), v_rank(n, -1);
        for (int e = 0; e < n_edges; ++e) {
            if (edges[e].v == edges[e].u + 1)
                h_rank[edges[e].u] = e;
            else
                v_rank[edges[e].u] = e;
        }
        std::vector<GridSquare> squares;
        squares.reserve(static_cast<size_t>(rows - 1) * (cols - 1));
        for (int r = 0; r + 1 < rows; ++r) {
            for (int c = 0; c + 1 < cols; ++c) {
                int32_t u = r * cols + c;
                double value = std::max(std::max(values[u], values[u + 1]),
                                        std::max(values[u + cols], values[u + cols + 1]));
                squares.push_back({value, u});
            }
        }
        std::sort(squares.begin(), squares.end());

        std::vector<int32_t> pivot_owner(n_edges, -1);
        std::vector<std::vector<int32_t>> reduced;
        std::vector<char> edge_paired(n_edges, 0);
        std::vector<int32_t> column;
        for (const GridSquare& s : squares) {
            int32_t u = s.anchor;
            column = {h_rank[u], h_rank[u + cols], v_rank[u], v_rank[u + 1]};
            std::sort(column.begin(), column.end());
            while (!column.empty()) {
                int32_t owner = pivot_owner[column.back()];
                if (owner < 0) break;
                column = xor_columns(column, reduced[owner]);
            }
            if (column.empty()) continue;
            int32_t low = column.back();
            pivot_owner[low] = static_cast<int32_t>(reduced.size());
            reduced.push_back(std::move(column));
            column.clear();
            edge_paired[low] = 1;
            double birth = edges[low].value;
            if (birth < s.value) h1.bars.push_back({birth, s.value});
        }
        for (int e = 0; e < n_edges; ++e)
            if (edge_positive[e] && !edge_paired[e]) h1.bars.push_back({edges[e].value, cap});
    }

    sort_bars(h0);
    sort_bars(h1);
    return {std::move(h0), std::move(h1)};
}

}  // namespace

BarcodePair cubical_persistence(const GrayImage& img, LevelSetDirection direction) {
    if (img.rows < 1 || img.cols < 1) throw DataError("cubical_persistence: empty image");
    if (direction == LevelSetDirection::Sublevel)
        return sublevel_persistence(img.values, img.rows, img.cols);
    std::vector<double> negated(img.values.size());
    for (size_t i = 0; i < negated.size(); ++i) negated[i] = -img.values[i];
    return sublevel_persistence(negated, img.rows, img.cols);
}

std::vector<LabeledBarcode> image_barcode_suite(const GrayImage& raw) {
    GrayImage surface = invert_normalize(raw);
    GrayImage thresholded = threshold_mean(surface);

    std::vector<LabeledBarcode> out;
    out.reserve(12);
    auto add = [&out](std::string source, BarcodePair pair) {
        out.push_back({source, std::move(pair.h0)});
        out.push_back({std::move(source), std::move(pair.h1)});
    };
    add("surface", cubical_persistence(surface, LevelSetDirection::Superlevel));
    add("x_slant", cubical_persistence(slant(surface, SlantKind::X), LevelSetDirection::Superlevel));
    add("y_slant", cubical_persistence(slant(surface, SlantKind::Y), LevelSetDirection::Superlevel));
    add("thr_x_slant",
        cubical_persistence(slant(thresholded, SlantKind::X), LevelSetDirection::Sublevel));
    add("thr_y_slant",
        cubical_persistence(slant(thresholded, SlantKind::Y), LevelSetDirection::Sublevel));
    add("thr_xy_slant",
        cubical_persistence(slant(thresholded, SlantKind::XY), LevelSetDirection::Sublevel));
    return out;
}

}  // namespace ridgeline
