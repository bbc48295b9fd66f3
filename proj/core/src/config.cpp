#include "wsdsr/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "wsdsr/errors.hpp"

namespace wsdsr {

namespace {

int wiener_side(int n1_ht) {
    // 0.5*N1, to the nearest even integer, ties away from the HT side, >= 4.
    const int side = 2 * static_cast<int>(std::lround(n1_ht / 4.0));
    return side < 4 ? 4 : side;
}

}  // namespace

ParamSet defaults(double s) {
    if (!(s > 1.0)) throw InvalidInput("defaults: scale must be > 1");
    ParamSet p;
    p.scale = s;

    p.ht.n1 = std::max(8, static_cast<int>(std::lround(4.0 * (s - 1.0))));
    p.ht.n2 = 32;
    p.ht.ns0 = 12;
    p.ht.ns_max = 12;  // the HT step uses only local search
    p.ht.n_step = p.ht.n1 - 1;
    p.ht.match_threshold = 3000.0;
    p.ht.search = SearchStrategy::Incremental;

    p.wiener.n1 = wiener_side(p.ht.n1);
    p.wiener.n2 = 32;
    p.wiener.ns0 = 12;
    p.wiener.ns_max = 48;
    p.wiener.n_step = p.wiener.n1 - 1;
    p.wiener.match_threshold = 400.0;
    p.wiener.search = SearchStrategy::Incremental;

    p.global.alpha = 1.75;
    p.global.gamma_k = 12.0;
    p.global.gamma_s = 2.0 / 3.0;
    p.global.beta1 = 40.0 / std::sqrt(s);
    p.global.beta0 = 20.0;
    p.global.k_pilot = 5;
    p.global.k_max = 400;

    p.wiener2d = Wiener2D::Identity;
    p.reuse_tables = true;
    return p;
}

void validate(const ParamSet& p) {
    auto stage = [](const StageParams& sp, const char* name) {
        auto fail = [&](const std::string& what) {
            throw InvalidInput(std::string("config: ") + name + ": " + what);
        };
        if (sp.n1 < 2) fail("n1 must be >= 2");
        if (!is_power_of_two(sp.n2)) fail("n2 must be a power of two");
        if (sp.n_step < 1 || sp.n_step > sp.n1) fail("need 1 <= n_step <= n1");
        if (sp.ns0 < 1) fail("ns0 must be >= 1");
        if (sp.ns0 > sp.ns_max) fail("need ns0 <= ns_max");
        if (!(sp.match_threshold >= 0.0)) fail("match threshold must be >= 0");
    };
    stage(p.ht, "ht");
    stage(p.wiener, "wiener");
    if (!(p.scale > 1.0)) throw InvalidInput("config: scale must be > 1");
    if (!(p.global.alpha > 0.0)) throw InvalidInput("config: alpha must be > 0");
    if (p.global.k_max < 1) throw InvalidInput("config: k_max must be >= 1");
    if (p.global.k_pilot < 1) throw InvalidInput("config: k_pilot must be >= 1");
    if (!(p.global.beta0 >= 0.0)) throw InvalidInput("config: beta0 must be >= 0");
    if (!(p.global.beta1 >= 0.0)) throw InvalidInput("config: beta1 must be >= 0");
}

namespace {

std::string search_name(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::Global: return "global";
        case SearchStrategy::Local: return "local";
        default: return "incremental";
    }
}

SearchStrategy parse_search(const std::string& v, const std::string& key) {
    if (v == "incremental") return SearchStrategy::Incremental;
    if (v == "local") return SearchStrategy::Local;
    if (v == "global") return SearchStrategy::Global;
    throw InvalidInput("config: bad value for " + key + " (use incremental|local|global)");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Field {
    std::function<void(ParamSet&, const std::string&)> set;
    std::function<std::string(const ParamSet&)> get;
};

int parse_int(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    int out = 0;
    try {
        out = std::stoi(v, &pos);
    } catch (const std::exception&) {
        throw InvalidInput("config: bad integer for " + key);
    }
    if (pos != v.size()) throw InvalidInput("config: bad integer for " + key);
    return out;
}

double parse_double(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw InvalidInput("config: bad number for " + key);
    }
    if (pos != v.size()) throw InvalidInput("config: bad number for " + key);
    return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw InvalidInput("config: bad value for " + key + " (use on|off)");
}

const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> table = [] {
        std::map<std::string, Field> f;
        auto int_field = [&](const std::string& key, int StageParams::* member,
                             StageParams ParamSet::* stage) {
            f[key] = {[key, member, stage](ParamSet& p, const std::string& v) {
                          p.*stage.*member = parse_int(v, key);
                      },
                      [member, stage](const ParamSet& p) {
                          return std::to_string(p.*stage.*member);
                      }};
        };
        int_field("n1_ht", &StageParams::n1, &ParamSet::ht);
        int_field("n2_ht", &StageParams::n2, &ParamSet::ht);
        int_field("ns0_ht", &StageParams::ns0, &ParamSet::ht);
        int_field("ns_max_ht", &StageParams::ns_max, &ParamSet::ht);
        int_field("n_step_ht", &StageParams::n_step, &ParamSet::ht);
        int_field("n1_wiener", &StageParams::n1, &ParamSet::wiener);
        int_field("n2_wiener", &StageParams::n2, &ParamSet::wiener);
        int_field("ns0_wiener", &StageParams::ns0, &ParamSet::wiener);
        int_field("ns_max_wiener", &StageParams::ns_max, &ParamSet::wiener);
        int_field("n_step_wiener", &StageParams::n_step, &ParamSet::wiener);

        f["match_thr_ht"] = {[](ParamSet& p, const std::string& v) {
                                 p.ht.match_threshold = parse_double(v, "match_thr_ht");
                             },
                             [](const ParamSet& p) { return fmt(p.ht.match_threshold); }};
        f["match_thr_wiener"] = {[](ParamSet& p, const std::string& v) {
                                     p.wiener.match_threshold = parse_double(v, "match_thr_wiener");
                                 },
                                 [](const ParamSet& p) { return fmt(p.wiener.match_threshold); }};
        f["search"] = {[](ParamSet& p, const std::string& v) {
                           const SearchStrategy s = parse_search(v, "search");
                           p.ht.search = s;
                           p.wiener.search = s;
                       },
                       [](const ParamSet& p) { return search_name(p.wiener.search); }};
        f["wiener2d"] = {[](ParamSet& p, const std::string& v) {
                             if (v == "i" || v == "identity")
                                 p.wiener2d = Wiener2D::Identity;
                             else if (v == "dct")
                                 p.wiener2d = Wiener2D::Dct;
                             else
                                 throw InvalidInput("config: bad value for wiener2d (use i|dct)");
                         },
                         [](const ParamSet& p) {
                             return std::string(p.wiener2d == Wiener2D::Dct ? "dct" : "i");
                         }};
        f["reuse"] = {[](ParamSet& p, const std::string& v) {
                          p.reuse_tables = parse_bool(v, "reuse");
                      },
                      [](const ParamSet& p) { return std::string(p.reuse_tables ? "on" : "off"); }};

        auto global_double = [&](const std::string& key, double GlobalParams::* member) {
            f[key] = {[key, member](ParamSet& p, const std::string& v) {
                          p.global.*member = parse_double(v, key);
                      },
                      [member](const ParamSet& p) { return fmt(p.global.*member); }};
        };
        global_double("alpha", &GlobalParams::alpha);
        global_double("gamma_k", &GlobalParams::gamma_k);
        global_double("gamma_s", &GlobalParams::gamma_s);
        global_double("beta0", &GlobalParams::beta0);
        global_double("beta1", &GlobalParams::beta1);
        f["k_pilot"] = {[](ParamSet& p, const std::string& v) {
                            p.global.k_pilot = parse_int(v, "k_pilot");
                        },
                        [](const ParamSet& p) { return std::to_string(p.global.k_pilot); }};
        f["k_max"] = {[](ParamSet& p, const std::string& v) {
                          p.global.k_max = parse_int(v, "k_max");
                      },
                      [](const ParamSet& p) { return std::to_string(p.global.k_max); }};
        f["scale"] = {[](ParamSet& p, const std::string& v) {
                          p.scale = parse_double(v, "scale");
                      },
                      [](const ParamSet& p) { return fmt(p.scale); }};
        return f;
    }();
    return table;
}

// Order of dump_config output; every field appears exactly once.
const char* kDumpOrder[] = {
    "scale",      "n1_ht",        "n2_ht",     "ns0_ht",    "ns_max_ht",        "n_step_ht",
    "match_thr_ht", "n1_wiener",  "n2_wiener", "ns0_wiener", "ns_max_wiener",   "n_step_wiener",
    "match_thr_wiener", "search", "wiener2d",  "reuse",     "alpha",            "gamma_k",
    "gamma_s",    "beta0",        "beta1",     "k_pilot",   "k_max",
};

}  // namespace

ParamSet apply_overrides_text(const std::string& text, double s) {
    ParamSet p = defaults(s);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("config: line " + std::to_string(lineno) + " is not key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto strip = [](std::string& v) {
            const auto b = v.find_first_not_of(" \t");
            const auto e = v.find_last_not_of(" \t");
            v = (b == std::string::npos) ? std::string() : v.substr(b, e - b + 1);
        };
        strip(key);
        strip(value);

        const auto it = fields().find(key);
        if (it == fields().end()) throw InvalidInput("config: unknown key '" + key + "'");
        it->second.set(p, value);
    }
    validate(p);
    return p;
}

ParamSet load_overrides(const std::string& path, double s) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return apply_overrides_text(buf.str(), s);
}

std::string dump_config(const ParamSet& p) {
    std::ostringstream out;
    for (const char* key : kDumpOrder) out << key << "=" << fields().at(key).get(p) << "\n";
    return out.str();
}

void write_match_table(const std::string& path, const MatchTable& table) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("write_match_table: cannot open " + path);
    out.precision(17);
    out << table.n1 << " " << table.refs.size() << "\n";
    for (std::size_t i = 0; i < table.refs.size(); ++i) {
        out << table.refs[i].row << " " << table.refs[i].col << " " << table.lists[i].size();
        for (const MatchEntry& e : table.lists[i])
            out << " " << e.origin.row << " " << e.origin.col << " " << e.dist;
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_match_table: write failed for " + path);
}

MatchTable read_match_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("read_match_table: cannot open " + path);
    MatchTable table;
    std::size_t refs = 0;
    if (!(in >> table.n1 >> refs)) throw InvalidInput("read_match_table: bad header");
    table.refs.resize(refs);
    table.lists.resize(refs);
    for (std::size_t i = 0; i < refs; ++i) {
        std::size_t len = 0;
        if (!(in >> table.refs[i].row >> table.refs[i].col >> len))
            throw InvalidInput("read_match_table: truncated table");
        table.lists[i].resize(len);
        for (std::size_t j = 0; j < len; ++j) {
            MatchEntry& e = table.lists[i][j];
            if (!(in >> e.origin.row >> e.origin.col >> e.dist))
                throw InvalidInput("read_match_table: truncated entry");
        }
    }
    return table;
}

}  // namespace wsdsr
