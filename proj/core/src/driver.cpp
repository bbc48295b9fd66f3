#include "wsdsr/driver.hpp"

#include <cmath>
#include <cstdio>

#include "wsdsr/color.hpp"
#include "wsdsr/errors.hpp"
#include "wsdsr/resample.hpp"

namespace wsdsr {

double tau_schedule(int k, int total_iterations, double s, const GlobalParams& gp) {
    if (total_iterations < 1) throw InvalidInput("tau_schedule: need at least one iteration");
    if (k < 0 || k > total_iterations) throw InvalidInput("tau_schedule: k out of range");
    const double t = static_cast<double>(total_iterations - k) / total_iterations;
    return gp.gamma_k * t * t + gp.gamma_s * s;
}

int iteration_count(const Plane& y, double s, const GlobalParams& gp) {
    if (y.data.empty()) throw InvalidInput("iteration_count: empty input");
    const int hw = std::max(1, static_cast<int>(std::lround(y.width * s)));
    const int hh = std::max(1, static_cast<int>(std::lround(y.height * s)));
    const Plane round_trip = resize_to(resize_to(y, hw, hh, false), y.width, y.height, true);
    double sum = 0.0;
    for (std::size_t i = 0; i < y.data.size(); ++i) {
        const double d = y.data[i] - round_trip.data[i];
        sum += d * d;
    }
    const double msr = sum / static_cast<double>(y.data.size());
    long k = std::lround(gp.beta1 * msr + gp.beta0);
    const long floor_k = std::lround(gp.beta0);
    if (k < floor_k) k = floor_k;
    if (k > gp.k_max) k = gp.k_max;
    if (k < 1) k = 1;
    return static_cast<int>(k);
}

namespace {

Plane luma_of_channels(const std::vector<Plane>& channels, Profile profile) {
    if (channels.size() == 1 || profile != Profile::YRgb) return channels[0];
    MultiPlane rgb;
    rgb.colorspace = ColorSpace::Rgb;
    rgb.planes = channels;
    return rgb_luma_plane(rgb);
}

// Procedure shared by all profiles: every channel marches through the same
// iteration, block matching is driven by the luma view.
std::vector<Plane> solve_channels(const std::vector<Plane>& y_channels, Profile profile,
                                  const ParamSet& params, const SolveOptions& opts) {
    validate(params);
    const double s = params.scale;
    const Plane& y_luma = y_channels[0];

    const int hr_w = static_cast<int>(std::lround(y_luma.width * s));
    const int hr_h = static_cast<int>(std::lround(y_luma.height * s));
    if (hr_w < params.ht.n1 || hr_h < params.ht.n1)
        throw InvalidInput("super_resolve: input too small for one block after upsampling");

    std::vector<Plane> x;
    x.reserve(y_channels.size());
    for (const Plane& y : y_channels) x.push_back(resize_to(y, hr_w, hr_h, false));

    const int total =
        opts.forced_iterations > 0 ? opts.forced_iterations
                                   : iteration_count(y_luma, s, params.global);
    if (opts.iterations_out) *opts.iterations_out = total;

    FilterState state;
    if (opts.oracle_ht && opts.oracle_pilot) {
        state.m_ht = *opts.oracle_ht;
        state.m_pilot = *opts.oracle_pilot;
        state.has_ht = true;
        state.freeze_tables = true;
    } else if (opts.oracle_ht || opts.oracle_pilot) {
        throw InvalidInput("super_resolve: oracle mode needs both match tables");
    }

    const WsdParams wsd_params = params.wsd();
    auto luma_of = [profile](const std::vector<Plane>& ch) {
        return luma_of_channels(ch, profile);
    };

    for (int k = 1; k <= total; ++k) {
        const double tau = tau_schedule(k, total, s, params.global);
        std::vector<Plane> filtered = wsd_channels(x, luma_of, tau, k - 1, state, wsd_params);
        for (std::size_t ch = 0; ch < filtered.size(); ++ch) {
            const Plane& y = y_channels[ch];
            Plane down = resize_to(filtered[ch], y.width, y.height, true);
            for (std::size_t i = 0; i < down.data.size(); ++i)
                down.data[i] = y.data[i] - down.data[i];
            const Plane back = resize_to(down, hr_w, hr_h, false);
            Plane& xc = x[ch];
            xc = std::move(filtered[ch]);
            for (std::size_t i = 0; i < xc.data.size(); ++i)
                xc.data[i] += params.global.alpha * back.data[i];
        }
    }

    if (opts.stats_out) *opts.stats_out = state.stats;
    return x;
}

}  // namespace

Plane super_resolve(const Plane& y, const ParamSet& params, const SolveOptions& opts) {
    return solve_channels({y}, Profile::YOnly, params, opts)[0];
}

MultiPlane super_resolve_color(const MultiPlane& img, const ParamSet& params, Profile profile,
                               const SolveOptions& opts) {
    if (img.colorspace == ColorSpace::Gray) {
        if (img.planes.size() != 1) throw InvalidInput("super_resolve_color: bad gray input");
        if (profile != Profile::YOnly)
            std::fprintf(stderr, "sr: grayscale input, falling back to the y profile\n");
        MultiPlane out;
        out.colorspace = ColorSpace::Gray;
        out.planes.push_back(super_resolve(img.planes[0], params, opts));
        return out;
    }
    if (img.colorspace != ColorSpace::Rgb)
        throw InvalidInput("super_resolve_color: input must be Gray or RGB");

    const double s = params.scale;
    const MultiPlane ycc = rgb_to_ycbcr(img);
    MultiPlane out_ycc;
    out_ycc.colorspace = ColorSpace::YCbCr;

    switch (profile) {
        case Profile::YOnly: {
            out_ycc.planes.push_back(super_resolve(ycc.planes[0], params, opts));
            const int hw = out_ycc.planes[0].width;
            const int hh = out_ycc.planes[0].height;
            out_ycc.planes.push_back(resize_to(ycc.planes[1], hw, hh, false));
            out_ycc.planes.push_back(resize_to(ycc.planes[2], hw, hh, false));
            return ycbcr_to_rgb(out_ycc);
        }
        case Profile::YYCbCr: {
            out_ycc.planes = solve_channels(ycc.planes, profile, params, opts);
            return ycbcr_to_rgb(out_ycc);
        }
        case Profile::YRgb: {
            MultiPlane out;
            out.colorspace = ColorSpace::Rgb;
            out.planes = solve_channels(img.planes, profile, params, opts);
            for (Plane& p : out.planes)
                for (double& v : p.data) v = v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v);
            return out;
        }
    }
    throw std::logic_error("super_resolve_color: unhandled profile");
}

}  // namespace wsdsr
