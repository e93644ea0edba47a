#include "isi2d/run_config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace isi2d {

namespace {

struct Field {
    const char* key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

bool parse_bool(const std::string& s) {
    if (s == "on" || s == "true" || s == "1") return true;
    if (s == "off" || s == "false" || s == "0") return false;
    throw std::invalid_argument("boolean field expects on/off: got '" + s + "'");
}

#define STR_FIELD(key, member)                                     \
    Field{key, [](const RunConfig& c) { return c.member; },        \
          [](RunConfig& c, const std::string& v) { c.member = v; }}
#define INT_FIELD(key, member, type)                                          \
    Field{key, [](const RunConfig& c) { return std::to_string(c.member); },   \
          [](RunConfig& c, const std::string& v) { c.member = static_cast<type>(std::stoll(v)); }}
#define U64_FIELD(key, member)                                                \
    Field{key, [](const RunConfig& c) { return std::to_string(c.member); },   \
          [](RunConfig& c, const std::string& v) { c.member = std::stoull(v); }}
#define DBL_FIELD(key, member)                                       \
    Field{key, [](const RunConfig& c) { return fmt_double(c.member); }, \
          [](RunConfig& c, const std::string& v) { c.member = std::stod(v); }}
#define BOOL_FIELD(key, member)                                                    \
    Field{key, [](const RunConfig& c) { return c.member ? "on" : "off"; },         \
          [](RunConfig& c, const std::string& v) { c.member = parse_bool(v); }}

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        STR_FIELD("command", command),
        STR_FIELD("code.alist", code_alist),
        INT_FIELD("code.n", code_n, int),
        INT_FIELD("code.dv", code_dv, int),
        INT_FIELD("code.dc", code_dc, int),
        INT_FIELD("code.girth", code_girth, int),
        U64_FIELD("code.seed", code_seed),
        STR_FIELD("code.coset", coset),
        U64_FIELD("code.coset_seed", coset_seed),
        STR_FIELD("channel", channel),
        STR_FIELD("mapping.kind", mapping_kind),
        U64_FIELD("mapping.seed", mapping_seed),
        INT_FIELD("grid.rows", grid_rows, int),
        INT_FIELD("iters.det", i_det, int),
        INT_FIELD("iters.c", i_c, int),
        INT_FIELD("iters.out", i_out, int),
        STR_FIELD("points.snr", snr_grid),
        STR_FIELD("points.sigma", sigma_grid),
        INT_FIELD("stop.max_frames", max_frames, std::int64_t),
        INT_FIELD("stop.min_errors", min_errors, std::int64_t),
        BOOL_FIELD("stop.early_exit", early_exit),
        INT_FIELD("de.samples", de_samples, std::int64_t),
        DBL_FIELD("de.delta", de_delta),
        DBL_FIELD("de.llr_max", de_llr_max),
        DBL_FIELD("de.p_ers", de_p_ers),
        DBL_FIELD("de.p_zero_tol", de_p_zero_tol),
        INT_FIELD("de.max_outer", de_max_outer, int),
        INT_FIELD("de.max_inner", de_max_inner, int),
        INT_FIELD("de.page_rows", de_page_rows, int),
        INT_FIELD("de.page_cols", de_page_cols, int),
        INT_FIELD("de.margin", de_margin, int),
        BOOL_FIELD("de.ext2_channel", de_ext2_channel),
        BOOL_FIELD("de.analytic_awgn", de_analytic_awgn),
        BOOL_FIELD("de.stall_detect", de_stall_detect),
        STR_FIELD("threshold.mode", th_mode),
        DBL_FIELD("threshold.lo", th_lo),
        DBL_FIELD("threshold.hi", th_hi),
        DBL_FIELD("threshold.tol", th_tol),
        INT_FIELD("window.f_c", f_c, int),
        INT_FIELD("window.f_d", f_d, int),
        INT_FIELD("neighborhood.t", nb_t, int),
        INT_FIELD("neighborhood.n", nb_n, std::int64_t),
        U64_FIELD("seed", seed),
        INT_FIELD("threads", threads, int),
        BOOL_FIELD("timing", timing),
        STR_FIELD("out", out),
    };
    return f;
}

#undef STR_FIELD
#undef INT_FIELD
#undef U64_FIELD
#undef DBL_FIELD
#undef BOOL_FIELD

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string RunConfig::serialize() const {
    std::ostringstream os;
    for (const auto& f : fields()) os << f.key << '=' << f.get(*this) << '\n';
    return os.str();
}

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        bool found = false;
        for (const auto& f : fields()) {
            if (key == f.key) {
                try {
                    f.set(c, val);
                } catch (const std::exception& e) {
                    throw std::invalid_argument("config field '" + key + "': " + e.what());
                }
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("unknown config key '" + key + "'");
    }
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

void RunConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("config field '" + field + "': " + why);
    };
    if (code_alist.empty()) {
        if (code_n <= 0) fail("code.n", "must be positive");
        if (code_dv < 1) fail("code.dv", "must be >= 1");
        if (code_dc < 2) fail("code.dc", "must be >= 2");
        if (code_girth != 4 && code_girth != 6) fail("code.girth", "must be 4 or 6");
    }
    if (coset != "zero" && coset != "random") fail("code.coset", "must be zero or random");
    if (mapping_kind != "row-major" && mapping_kind != "random")
        fail("mapping.kind", "must be row-major or random");
    if (i_det < 1) fail("iters.det", "must be >= 1");
    if (i_c < 1) fail("iters.c", "must be >= 1");
    if (i_out < 1) fail("iters.out", "must be >= 1");
    if (!snr_grid.empty() && !sigma_grid.empty())
        fail("points.snr", "give either an SNR grid or a sigma grid, not both");
    for (const auto* g : {&snr_grid, &sigma_grid}) {
        if (g->empty()) continue;
        const auto v = parse_grid(*g);
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] <= v[i - 1]) fail("points", "grid must be strictly increasing");
    }
    if (max_frames < 1) fail("stop.max_frames", "must be >= 1");
    if (min_errors < 0) fail("stop.min_errors", "must be >= 0");
    if (de_samples < 1) fail("de.samples", "must be >= 1");
    if (!(de_delta > 0.0)) fail("de.delta", "must be positive");
    if (!(de_llr_max > de_delta)) fail("de.llr_max", "must exceed de.delta");
    if (de_max_outer < 1) fail("de.max_outer", "must be >= 1");
    if (de_max_inner < 1) fail("de.max_inner", "must be >= 1");
    if (de_page_rows - 2 * de_margin <= 0 || de_page_cols - 2 * de_margin <= 0)
        fail("de.margin", "leaves no interior bits to harvest");
    if (th_mode != "te" && th_mode != "non-te") fail("threshold.mode", "must be te or non-te");
    if (!(th_lo > 0.0) || !(th_hi > th_lo)) fail("threshold.lo", "need 0 < lo < hi");
    if (!(th_tol > 0.0)) fail("threshold.tol", "must be positive");
    if (f_c < 1) fail("window.f_c", "must be >= 1");
    if (f_d < 1) fail("window.f_d", "must be >= 1");
    if (threads < 1) fail("threads", "must be >= 1");
    if (nb_t < 0) fail("neighborhood.t", "must be >= 0");
    if (nb_n < 1) fail("neighborhood.n", "must be >= 1");
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.empty()) return out;
    if (spec.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream is(spec);
        if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
            throw std::invalid_argument("grid spec must be a:b:step with step > 0: '" + spec + "'");
        for (double x = a; x <= b + 1e-9 * step; x += step) out.push_back(x);
        return out;
    }
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

}  // namespace isi2d
