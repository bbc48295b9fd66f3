#include "wsdsr/wsd.hpp"

#include <cmath>
#include <stdexcept>

#include "wsdsr/errors.hpp"
#include "wsdsr/parallel.hpp"

namespace wsdsr {

PatchGroup extract_group(const Plane& plane, const MatchList& list, int n1) {
    PatchGroup g(n1, static_cast<int>(list.size()));
    g.origins.reserve(list.size());
    for (int j = 0; j < g.m; ++j) {
        const Coord o = list[j].origin;
        if (o.row < 0 || o.col < 0 || o.row > plane.height - n1 || o.col > plane.width - n1)
            throw std::logic_error("extract_group: origin out of bounds");
        g.origins.push_back(o);
        double* dst = g.values.data() + j * g.patch_size();
        for (int r = 0; r < n1; ++r) {
            const double* src = plane.row(o.row + r) + o.col;
            std::copy(src, src + n1, dst + r * n1);
        }
    }
    return g;
}

std::vector<PatchGroup> group(const Plane& plane, const MatchTable& table) {
    std::vector<PatchGroup> groups(table.lists.size());
    for (std::size_t i = 0; i < table.lists.size(); ++i)
        groups[i] = extract_group(plane, table.lists[i], table.n1);
    return groups;
}

PatchGroup hard_threshold_3d(PatchGroup g, double tau) {
    g = haar1_forward(dct2_forward(std::move(g)));
    for (std::size_t i = 1; i < g.values.size(); ++i) {
        if (std::abs(g.values[i]) < tau) g.values[i] = 0.0;
    }
    return dct2_inverse(haar1_inverse(std::move(g)));
}

WienerWeights estimate_wiener(const PatchGroup& pilot_group, double tau, Wiener2D mode) {
    PatchGroup spectrum = pilot_group;
    if (mode == Wiener2D::Dct) spectrum = dct2_forward(std::move(spectrum));
    spectrum = haar1_forward(std::move(spectrum));

    WienerWeights weights;
    weights.n1 = spectrum.n1;
    weights.m = spectrum.m;
    weights.w.resize(spectrum.values.size());
    const double tau2 = tau * tau;
    for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
        const double g2 = spectrum.values[i] * spectrum.values[i];
        const double denom = g2 + tau2;
        weights.w[i] = denom > 0.0 ? g2 / denom : 1.0;
    }

    // The consensus coefficients stay untouched so constants are exact fixed
    // points: with T_2D = I that is the fiber-DC at every pixel, with a 2D
    // transform only the all-DC coefficient.
    const std::size_t patch = spectrum.patch_size();
    if (mode == Wiener2D::Identity) {
        for (std::size_t px = 0; px < patch; ++px) weights.w[px] = 1.0;
    } else {
        weights.w[0] = 1.0;
    }
    return weights;
}

PatchGroup wiener_filter(PatchGroup g, const WienerWeights& weights, Wiener2D mode) {
    if (g.n1 != weights.n1 || g.m != weights.m)
        throw InvalidInput("wiener_filter: weight shape mismatch");
    if (mode == Wiener2D::Dct) g = dct2_forward(std::move(g));
    g = haar1_forward(std::move(g));
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] *= weights.w[i];
    g = haar1_inverse(std::move(g));
    if (mode == Wiener2D::Dct) g = dct2_inverse(std::move(g));
    return g;
}

namespace {

// Streaming unweighted aggregation; groups are added in table order so the
// result does not depend on worker count.
class Aggregator {
public:
    Aggregator(int width, int height) : sum_(width, height, 0.0), count_(width, height, 0.0) {}

    void add(const PatchGroup& g) {
        for (int j = 0; j < g.m; ++j) {
            const Coord o = g.origins[j];
            const double* src = g.values.data() + j * g.patch_size();
            for (int r = 0; r < g.n1; ++r) {
                double* srow = sum_.row(o.row + r) + o.col;
                double* crow = count_.row(o.row + r) + o.col;
                const double* patch_row = src + r * g.n1;
                for (int c = 0; c < g.n1; ++c) {
                    srow[c] += patch_row[c];
                    crow[c] += 1.0;
                }
            }
        }
    }

    Plane finish() const {
        Plane out(sum_.width, sum_.height);
        for (std::size_t i = 0; i < out.data.size(); ++i) {
            if (count_.data[i] <= 0.0)
                throw std::logic_error("aggregate: pixel not covered by any patch");
            out.data[i] = sum_.data[i] / count_.data[i];
        }
        return out;
    }

private:
    Plane sum_;
    Plane count_;
};

constexpr int kBatch = 1024;

// Extract/filter groups in parallel batches, aggregate sequentially in table
// order.
Plane filter_and_aggregate(const Plane& src, const MatchTable& table,
                           const std::function<PatchGroup(const MatchList&)>& filter_one,
                           FilterStats& stats) {
    Aggregator agg(src.width, src.height);
    const int n = static_cast<int>(table.lists.size());
    std::vector<PatchGroup> batch(std::min(kBatch, n));
    for (int base = 0; base < n; base += kBatch) {
        const int count = std::min(kBatch, n - base);
        parallel_for(count, [&](int i) { batch[i] = filter_one(table.lists[base + i]); });
        for (int i = 0; i < count; ++i) agg.add(batch[i]);
        stats.groups_filtered += count;
    }
    return agg.finish();
}

Plane ht_stage(const Plane& x, const MatchTable& table, double tau, FilterStats& stats) {
    return filter_and_aggregate(
        x, table,
        [&](const MatchList& list) {
            return hard_threshold_3d(extract_group(x, list, table.n1), tau);
        },
        stats);
}

Plane wiener_stage(const Plane& x, const Plane& pilot, const MatchTable& table, double tau,
                   Wiener2D mode, FilterStats& stats) {
    return filter_and_aggregate(
        x, table,
        [&](const MatchList& list) {
            const WienerWeights w =
                estimate_wiener(extract_group(pilot, list, table.n1), tau, mode);
            return wiener_filter(extract_group(x, list, table.n1), w, mode);
        },
        stats);
}

MatchTable build_table_counted(const Plane& plane, const StageParams& params,
                               FilterStats& stats) {
    MatchTable table = build_match_table(plane, params);
    stats.tables_built += 1;
    stats.block_match_refs += static_cast<std::int64_t>(table.refs.size());
    return table;
}

}  // namespace

Plane aggregate(const std::vector<PatchGroup>& groups, int width, int height) {
    Aggregator agg(width, height);
    for (const PatchGroup& g : groups) agg.add(g);
    return agg.finish();
}

std::vector<Plane> wsd_channels(const std::vector<Plane>& x,
                                const std::function<Plane(const std::vector<Plane>&)>& luma_of,
                                double tau, int k, FilterState& state, const WsdParams& params) {
    if (x.empty()) throw InvalidInput("wsd: no channels");

    // Match table for pilot estimation: computed once, then reused.
    const bool rebuild_ht = !state.freeze_tables && (!state.has_ht || !params.reuse_tables);
    if (rebuild_ht) {
        state.m_ht = build_table_counted(luma_of(x), params.ht, state.stats);
        state.has_ht = true;
    } else if (!state.has_ht) {
        throw std::logic_error("wsd: frozen state has no HT match table");
    }

    // Pilot estimation.
    const bool pilot_due = (k % params.k_pilot == 0) || !params.reuse_tables || !state.has_pilot;
    if (pilot_due) {
        state.pilots.clear();
        state.pilots.reserve(x.size());
        for (const Plane& ch : x)
            state.pilots.push_back(ht_stage(ch, state.m_ht, tau, state.stats));
        if (!state.freeze_tables)
            state.m_pilot = build_table_counted(luma_of(state.pilots), params.wiener, state.stats);
        else if (state.m_pilot.lists.empty())
            throw std::logic_error("wsd: frozen state has no Wiener match table");
        state.has_pilot = true;
        state.last_pilot_iteration = k;
    }

    // Filter the input using pilot information.
    std::vector<Plane> out;
    out.reserve(x.size());
    for (std::size_t ch = 0; ch < x.size(); ++ch)
        out.push_back(wiener_stage(x[ch], state.pilots[ch], state.m_pilot, tau, params.wiener2d,
                                   state.stats));
    return out;
}

Plane wsd(const Plane& x, double tau, int k, FilterState& state, const WsdParams& params) {
    std::vector<Plane> channels{x};
    auto first = [](const std::vector<Plane>& p) { return p[0]; };
    return wsd_channels(channels, first, tau, k, state, params)[0];
}

}  // namespace wsdsr
