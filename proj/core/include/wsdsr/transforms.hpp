#pragma once

#include <vector>

#include "wsdsr/image.hpp"

namespace wsdsr {

struct Coord {
    int row = 0;
    int col = 0;

    bool operator==(const Coord&) const = default;
};

/// An n1 x n1 x m stack of patches cut from one plane; the third axis is the
/// similarity dimension. Patch j occupies values[j*n1*n1 ... (j+1)*n1*n1).
struct PatchGroup {
    int n1 = 0;
    int m = 0;
    std::vector<double> values;
    std::vector<Coord> origins;

    PatchGroup() = default;
    PatchGroup(int side, int count)
        : n1(side), m(count), values(static_cast<std::size_t>(side) * side * count, 0.0) {}

    double& at(int patch, int row, int col) {
        return values[(static_cast<std::size_t>(patch) * n1 + row) * n1 + col];
    }
    double at(int patch, int row, int col) const {
        return values[(static_cast<std::size_t>(patch) * n1 + row) * n1 + col];
    }
    std::size_t patch_size() const { return static_cast<std::size_t>(n1) * n1; }
};

/// Orthonormal DCT-II basis for side n; row-major n x n.
const std::vector<double>& dct_matrix(int n);

/// Orthonormal separable 2D DCT-II of every patch. Energy preserving.
PatchGroup dct2_forward(PatchGroup group);
PatchGroup dct2_inverse(PatchGroup group);

/// Full multilevel orthonormal Haar transform of every pixel's length-m fiber
/// along the similarity dimension. m must be a power of two.
PatchGroup haar1_forward(PatchGroup group);
PatchGroup haar1_inverse(PatchGroup group);

/// In-place Haar of a single contiguous fiber of length m (power of two).
void haar_fiber_forward(double* fiber, int m, double* scratch);
void haar_fiber_inverse(double* fiber, int m, double* scratch);

bool is_power_of_two(int v);

}  // namespace wsdsr
