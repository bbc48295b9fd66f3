#pragma once

#include <vector>

#include "wsdsr/image.hpp"
#include "wsdsr/transforms.hpp"

namespace wsdsr {

enum class SearchStrategy {
    Incremental,  // start at ns0, double the radius until a full group is found
    Local,        // fixed window of radius ns0
    Global,       // whole plane
};

/// Block-matching parameters of one filter stage.
struct StageParams {
    int n1 = 8;                      // patch side
    int n2 = 32;                     // max group size, power of two
    int ns0 = 12;                    // initial search radius
    int ns_max = 12;                 // max search radius
    int n_step = 7;                  // reference grid step
    double match_threshold = 3000.0; // max mean squared distance per pixel
    SearchStrategy search = SearchStrategy::Incremental;
};

struct MatchEntry {
    Coord origin;
    double dist = 0.0;
};

/// Matches of one reference block: the reference itself first (distance 0),
/// then other origins by non-decreasing distance; length is a power of two.
using MatchList = std::vector<MatchEntry>;

/// Per-reference-block ordered similar-patch lists, aligned with the
/// reference grid that produced them.
struct MatchTable {
    int n1 = 0;
    std::vector<Coord> refs;
    std::vector<MatchList> lists;
};

/// Block origins at steps {0, n_step, 2*n_step, ...} per axis, with the last
/// row/column clamped so a block flush with the bottom/right edge is always
/// included. Guarantees the blocks cover the whole plane.
std::vector<int> grid_positions(int size, int n1, int n_step);
std::vector<Coord> reference_grid(int width, int height, int n1, int n_step);

/// Finds the best group for one reference block. Searches a Chebyshev window
/// around the reference, growing it per the stage's search strategy until n2
/// below-threshold matches exist (or the radius cap is hit). Ties break in
/// raster scan order; the result length is truncated to a power of two.
MatchList block_match(const Plane& plane, Coord ref, const StageParams& params);

/// block_match over the whole reference grid. Deterministic.
MatchTable build_match_table(const Plane& plane, const StageParams& params);

/// Mean squared distance per pixel between two n1-sized patches.
double patch_distance(const Plane& plane, Coord a, Coord b, int n1);

int largest_power_of_two_at_most(int v);

}  // namespace wsdsr
