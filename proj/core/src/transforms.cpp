#include "wsdsr/transforms.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "wsdsr/errors.hpp"

namespace wsdsr {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

const std::vector<double>& dct_matrix(int n) {
    static std::mutex mutex;
    static std::map<int, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> m(static_cast<std::size_t>(n) * n);
    const double pi = std::acos(-1.0);
    for (int k = 0; k < n; ++k) {
        const double s = (k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n));
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(k) * n + j] = s * std::cos(pi * (2 * j + 1) * k / (2.0 * n));
    }
    return cache.emplace(n, std::move(m)).first->second;
}

namespace {

// out = C * patch * C^T when transposed=false, C^T * patch * C otherwise.
void dct_patch(const double* in, double* out, const double* c, int n, bool transposed, double* tmp) {
    // tmp = A * in, with A = C or C^T
    for (int r = 0; r < n; ++r) {
        for (int col = 0; col < n; ++col) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double a = transposed ? c[k * n + r] : c[r * n + k];
                acc += a * in[k * n + col];
            }
            tmp[r * n + col] = acc;
        }
    }
    // out = tmp * A^T
    for (int r = 0; r < n; ++r) {
        for (int col = 0; col < n; ++col) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double a = transposed ? c[k * n + col] : c[col * n + k];
                acc += tmp[r * n + k] * a;
            }
            out[r * n + col] = acc;
        }
    }
}

PatchGroup dct2_apply(PatchGroup group, bool transposed) {
    const int n = group.n1;
    const double* c = dct_matrix(n).data();
    std::vector<double> tmp(group.patch_size());
    std::vector<double> out(group.patch_size());
    for (int j = 0; j < group.m; ++j) {
        double* patch = group.values.data() + j * group.patch_size();
        dct_patch(patch, out.data(), c, n, transposed, tmp.data());
        std::copy(out.begin(), out.end(), patch);
    }
    return group;
}

}  // namespace

PatchGroup dct2_forward(PatchGroup group) { return dct2_apply(std::move(group), false); }

PatchGroup dct2_inverse(PatchGroup group) { return dct2_apply(std::move(group), true); }

void haar_fiber_forward(double* fiber, int m, double* scratch) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for (int len = m; len >= 2; len >>= 1) {
        const int half = len / 2;
        for (int i = 0; i < half; ++i) {
            scratch[i] = (fiber[2 * i] + fiber[2 * i + 1]) * inv_sqrt2;
            scratch[half + i] = (fiber[2 * i] - fiber[2 * i + 1]) * inv_sqrt2;
        }
        std::copy(scratch, scratch + len, fiber);
    }
}

void haar_fiber_inverse(double* fiber, int m, double* scratch) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for (int len = 2; len <= m; len <<= 1) {
        const int half = len / 2;
        for (int i = 0; i < half; ++i) {
            scratch[2 * i] = (fiber[i] + fiber[half + i]) * inv_sqrt2;
            scratch[2 * i + 1] = (fiber[i] - fiber[half + i]) * inv_sqrt2;
        }
        std::copy(scratch, scratch + len, fiber);
    }
}

namespace {

PatchGroup haar1_apply(PatchGroup group, bool inverse) {
    if (!is_power_of_two(group.m))
        throw InvalidInput("haar1: group size must be a power of two");
    const std::size_t stride = group.patch_size();
    std::vector<double> fiber(group.m);
    std::vector<double> scratch(group.m);
    for (std::size_t px = 0; px < stride; ++px) {
        for (int j = 0; j < group.m; ++j) fiber[j] = group.values[j * stride + px];
        if (inverse)
            haar_fiber_inverse(fiber.data(), group.m, scratch.data());
        else
            haar_fiber_forward(fiber.data(), group.m, scratch.data());
        for (int j = 0; j < group.m; ++j) group.values[j * stride + px] = fiber[j];
    }
    return group;
}

}  // namespace

PatchGroup haar1_forward(PatchGroup group) { return haar1_apply(std::move(group), false); }

PatchGroup haar1_inverse(PatchGroup group) { return haar1_apply(std::move(group), true); }

}  // namespace wsdsr
