#include "wsdsr/blockmatch.hpp"

#include <algorithm>
#include <cmath>

#include "wsdsr/errors.hpp"
#include "wsdsr/parallel.hpp"

namespace wsdsr {

int largest_power_of_two_at_most(int v) {
    int p = 1;
    while (p * 2 <= v) p *= 2;
    return p;
}

std::vector<int> grid_positions(int size, int n1, int n_step) {
    if (size < n1) throw InvalidInput("reference_grid: plane smaller than one block");
    if (n_step < 1 || n_step > n1) throw InvalidInput("reference_grid: need 1 <= n_step <= n1");
    const int last = size - n1;
    std::vector<int> pos;
    for (int p = 0; p < last; p += n_step) pos.push_back(p);
    pos.push_back(last);
    return pos;
}

std::vector<Coord> reference_grid(int width, int height, int n1, int n_step) {
    const std::vector<int> rows = grid_positions(height, n1, n_step);
    const std::vector<int> cols = grid_positions(width, n1, n_step);
    std::vector<Coord> grid;
    grid.reserve(rows.size() * cols.size());
    for (int r : rows)
        for (int c : cols) grid.push_back({r, c});
    return grid;
}

double patch_distance(const Plane& plane, Coord a, Coord b, int n1) {
    double sum = 0.0;
    for (int r = 0; r < n1; ++r) {
        const double* pa = plane.row(a.row + r) + a.col;
        const double* pb = plane.row(b.row + r) + b.col;
        for (int c = 0; c < n1; ++c) {
            const double d = pa[c] - pb[c];
            sum += d * d;
        }
    }
    return sum / (static_cast<double>(n1) * n1);
}

namespace {

// All below-threshold candidates within Chebyshev radius of ref, reference
// excluded, ordered by (distance, raster position).
std::vector<MatchEntry> scan_window(const Plane& plane, Coord ref, int radius,
                                    const StageParams& params) {
    const int row_lo = std::max(0, ref.row - radius);
    const int row_hi = std::min(plane.height - params.n1, ref.row + radius);
    const int col_lo = std::max(0, ref.col - radius);
    const int col_hi = std::min(plane.width - params.n1, ref.col + radius);

    std::vector<MatchEntry> found;
    for (int r = row_lo; r <= row_hi; ++r) {
        for (int c = col_lo; c <= col_hi; ++c) {
            if (r == ref.row && c == ref.col) continue;
            const double d = patch_distance(plane, ref, {r, c}, params.n1);
            if (d <= params.match_threshold) found.push_back({{r, c}, d});
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const MatchEntry& x, const MatchEntry& y) {
        return x.dist < y.dist;
    });
    return found;
}

MatchList assemble(Coord ref, std::vector<MatchEntry> others, int n2) {
    MatchList list;
    list.reserve(n2);
    list.push_back({ref, 0.0});
    for (const MatchEntry& e : others) {
        if (static_cast<int>(list.size()) >= n2) break;
        list.push_back(e);
    }
    list.resize(largest_power_of_two_at_most(static_cast<int>(list.size())));
    return list;
}

}  // namespace

MatchList block_match(const Plane& plane, Coord ref, const StageParams& params) {
    if (ref.row < 0 || ref.col < 0 || ref.row > plane.height - params.n1 ||
        ref.col > plane.width - params.n1)
        throw InvalidInput("block_match: reference out of bounds");

    const int whole_plane = std::max(plane.width, plane.height);
    int radius;
    int cap;
    switch (params.search) {
        case SearchStrategy::Global:
            radius = cap = whole_plane;
            break;
        case SearchStrategy::Local:
            radius = cap = params.ns0;
            break;
        case SearchStrategy::Incremental:
        default:
            radius = params.ns0;
            cap = params.ns_max;
            break;
    }

    std::vector<MatchEntry> others = scan_window(plane, ref, radius, params);
    while (static_cast<int>(others.size()) + 1 < params.n2 && radius < cap) {
        radius = std::min(radius * 2, cap);
        others = scan_window(plane, ref, radius, params);
    }
    return assemble(ref, std::move(others), params.n2);
}

MatchTable build_match_table(const Plane& plane, const StageParams& params) {
    MatchTable table;
    table.n1 = params.n1;
    table.refs = reference_grid(plane.width, plane.height, params.n1, params.n_step);
    table.lists.resize(table.refs.size());
    parallel_for(static_cast<int>(table.refs.size()),
                 [&](int i) { table.lists[i] = block_match(plane, table.refs[i], params); });
    return table;
}

}  // namespace wsdsr
