#pragma once

#include <string>

#include "wsdsr/blockmatch.hpp"
#include "wsdsr/wsd.hpp"

namespace wsdsr {

/// Driver-level constants: back-projection step, filter strength schedule,
/// iteration heuristic and pilot period.
struct GlobalParams {
    double alpha = 1.75;       // back-projection step size
    double gamma_k = 12.0;     // strength curve amplitude
    double gamma_s = 2.0 / 3;  // strength floor per unit scale
    double beta0 = 20.0;       // iteration heuristic offset
    double beta1 = 0.0;        // iteration heuristic gain, 40/sqrt(s) by default
    int k_pilot = 5;           // pilot recompute period
    int k_max = 400;           // iteration cap
};

/// Full parameter set for one scale factor.
struct ParamSet {
    double scale = 0.0;
    StageParams ht;
    StageParams wiener;
    GlobalParams global;
    Wiener2D wiener2d = Wiener2D::Identity;
    bool reuse_tables = true;

    WsdParams wsd() const {
        return WsdParams{ht, wiener, global.k_pilot, wiener2d, reuse_tables};
    }
};

/// Scale-derived defaults. HT patch side max(8, round(4(s-1))); the Wiener
/// side is half of it rounded to the nearest even integer >= 4.
ParamSet defaults(double s);

/// defaults(s) with key=value lines from the file applied and re-validated.
/// Unknown keys, unparseable values and violated invariants are errors that
/// name the offending key.
ParamSet load_overrides(const std::string& path, double s);

/// Same, from in-memory text.
ParamSet apply_overrides_text(const std::string& text, double s);

/// Effective parameters as key=value lines; parses back bit-exactly.
std::string dump_config(const ParamSet& p);

/// Validates every StageParams/GlobalParams invariant, throwing InvalidInput
/// that names the violated constraint.
void validate(const ParamSet& p);

/// Plain-text match table serialization: one reference per line, origin then
/// (row, col, distance) triples.
void write_match_table(const std::string& path, const MatchTable& table);
MatchTable read_match_table(const std::string& path);

}  // namespace wsdsr
