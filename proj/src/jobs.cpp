#include "kdnls/jobs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace kdnls {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, std::vector<ParamSpec>>& schemas() {
    static const std::map<std::string, std::vector<ParamSpec>> s = {
        {"soliton1",
         {{"m1", 1.0, "real part of lambda1"},
          {"n1", 2.0, "imaginary part of lambda1"},
          {"alpha", 1.0, "coupling"},
          {"theta_p", 1.0, "gauge theta = p x + q t"},
          {"theta_q", 1.0, "gauge theta = p x + q t"}}},
        {"soliton2",
         {{"m1", 0.7, "real part of lambda1"},
          {"n1", 0.3, "imaginary part of lambda1"},
          {"m2", 0.5, "real part of lambda2"},
          {"n2", 0.5, "imaginary part of lambda2"},
          {"alpha", 1.0, "coupling"},
          {"M", kNaN, "constant of the printed form; unset means 8 m1 n1 m2 n2 (|l1|^2 + |l2|^2)"}}},
        {"positon", {{"re", 0.8, "real part of the double eigenvalue"}, {"im", 0.8, "imaginary part"}}},
        {"breather", {{"engine", 0.0, "1 = Darboux engine at lambda = 0.5 + 0.5 i"}}},
        {"rogue1",
         {{"engine", 0.0, "1 = degenerate limit instead of the closed form"},
          {"eps", 1e-3, "degeneration radius (engine only)"}}},
        {"rogue2",
         {{"engine", 0.0, "1 = degenerate limit; implied by nonzero S"},
          {"eps", 1e-2, "degeneration radius (engine only)"},
          {"S0", 0.0, "phase polynomial"},
          {"S1", 0.0, "phase polynomial"},
          {"S2", 0.0, "phase polynomial"}}},
        {"rogue3",
         {{"eps", 1e-2, "degeneration radius"},
          {"S0", 0.0, "phase polynomial"},
          {"S1", 0.0, "phase polynomial"},
          {"S2", 0.0, "phase polynomial"}}},
        {"engine-nfold",
         {{"plane", 0.0, "0 = zero seed, 1 = plane-wave seed"},
          {"a", -2.0, "plane-wave wavenumber"},
          {"c", 1.0, "plane-wave amplitude"},
          {"alpha", 1.0, "coupling"},
          {"theta_p", 1.0, "gauge theta = p x + q t"},
          {"theta_q", 1.0, "gauge theta = p x + q t"},
          {"n", 1.0, "number of conjugate pairs (1..3)"},
          {"re1", 0.7, "lambda1"},
          {"im1", 0.3, "lambda1"},
          {"re2", 0.5, "lambda2"},
          {"im2", 0.5, "lambda2"},
          {"re3", 0.3, "lambda3"},
          {"im3", 0.9, "lambda3"}}},
        {"engine-degenerate",
         {{"plane", 1.0, "0 = zero seed (positon family), 1 = plane-wave seed (rogue family)"},
          {"a", -2.0, "plane-wave wavenumber"},
          {"c", 1.0, "plane-wave amplitude"},
          {"alpha", 1.0, "coupling"},
          {"theta_p", 1.0, "gauge theta = p x + q t"},
          {"theta_q", 1.0, "gauge theta = p x + q t"},
          {"re", 1.0, "base eigenvalue (a guess refined to s = 0 for the plane-wave seed)"},
          {"im", 1.0, "base eigenvalue"},
          {"n", 1.0, "order (1..3)"},
          {"eps", 1e-2, "degeneration radius"},
          {"S0", 0.0, "phase polynomial"},
          {"S1", 0.0, "phase polynomial"},
          {"S2", 0.0, "phase polynomial"}}},
    };
    return s;
}

int as_int(double v, const std::string& key) {
    if (v != std::floor(v)) throw Error(ErrorCode::InvalidConfig, key + " must be an integer");
    return int(v);
}

bool as_flag(double v, const std::string& key) {
    if (v != 0.0 && v != 1.0) throw Error(ErrorCode::InvalidConfig, key + " must be 0 or 1");
    return v == 1.0;
}

Seed seed_from(const ParamMap& p) {
    if (as_flag(p.at("plane"), "plane"))
        return make_plane_wave_seed(p.at("a"), p.at("c"), p.at("alpha"), p.at("theta_p"), p.at("theta_q"));
    return make_zero_seed(p.at("alpha"), p.at("theta_p"), p.at("theta_q"));
}

PointFunction engine_field(const DTOutput& out) { return out.as_function(); }

DTOptions dt_options(Precision p) {
    DTOptions o;
    o.precision = p;
    return o;
}

SolutionSource rogue_engine(SolutionSource src, int n) {
    const Seed pw = make_plane_wave_seed(-2.0, 1.0);
    DegenerationSpec spec;
    spec.lambda_c = critical_eigenvalue(pw);
    spec.epsilon = src.params.at("eps");
    spec.n = n;
    if (n > 1) spec.phases = {src.params.at("S0"), src.params.at("S1"), src.params.at("S2")};
    src.engine = true;
    src.seed = pw;
    src.field = engine_field(degenerate_limit(spec, pw, dt_options(src.precision)));
    return src;
}

std::string json_str(const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o + "\"";
}

std::string params_obj(const ParamMap& p) {
    std::string o = "{";
    bool first = true;
    for (const auto& [k, v] : p) {
        if (!first) o += ", ";
        first = false;
        o += json_str(k) + ": " + fmt_num(v);
    }
    return o + "}";
}

std::string grid_obj(const Grid2D& g) {
    return "{\"x_min\": " + fmt_num(g.x_min) + ", \"x_max\": " + fmt_num(g.x_max) + ", \"nx\": " +
           std::to_string(g.nx) + ", \"t_min\": " + fmt_num(g.t_min) + ", \"t_max\": " + fmt_num(g.t_max) +
           ", \"nt\": " + std::to_string(g.nt) + "}";
}

}  // namespace

const std::vector<std::string>& solution_names() {
    static const std::vector<std::string> n = {"soliton1", "soliton2", "positon", "breather", "rogue1",
                                               "rogue2", "rogue3", "engine-nfold", "engine-degenerate"};
    return n;
}

const std::vector<ParamSpec>& param_schema(const std::string& solution) {
    const auto it = schemas().find(solution);
    if (it == schemas().end()) throw Error(ErrorCode::InvalidConfig, "unknown solution '" + solution + "'");
    return it->second;
}

SolutionSource build_solution(const std::string& solution, const ParamMap& params, Transcription tr,
                              Precision precision) {
    const auto& schema = param_schema(solution);
    SolutionSource src;
    src.solution = solution;
    src.transcription = tr;
    src.precision = precision;
    for (const ParamSpec& s : schema) src.params[s.key] = s.default_value;
    for (const auto& [k, v] : params) {
        if (!src.params.count(k)) throw Error(ErrorCode::InvalidConfig, "unknown parameter '" + k + "' for " + solution);
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidConfig, "parameter '" + k + "' is not finite");
        src.params[k] = v;
    }
    const ParamMap& p = src.params;

    if (solution == "soliton1") {
        const CatalogEntry e = one_soliton(p.at("m1"), p.at("n1"), p.at("alpha"), p.at("theta_p"), p.at("theta_q"), tr);
        src.seed = e.seed;
        src.field = e.eval;
    } else if (solution == "soliton2") {
        const CatalogEntry e = two_soliton(p.at("m1"), p.at("n1"), p.at("m2"), p.at("n2"), p.at("alpha"), tr, p.at("M"));
        src.seed = e.seed;
        src.field = e.eval;
    } else if (solution == "positon") {
        const CatalogEntry e = positon(p.at("re"), p.at("im"), tr);
        src.seed = e.seed;
        src.field = e.eval;
    } else if (solution == "breather") {
        if (as_flag(p.at("engine"), "engine")) {
            const Seed pw = make_plane_wave_seed(-2.0, 1.0);
            src.engine = true;
            src.seed = pw;
            src.field = engine_field(n_fold(build_reduced_set({cd(0.5, 0.5)}, pw), pw, dt_options(precision)));
        } else {
            const CatalogEntry e = breather(tr);
            src.seed = e.seed;
            src.field = e.eval;
        }
    } else if (solution == "rogue1") {
        if (as_flag(p.at("engine"), "engine")) return rogue_engine(src, 1);
        const CatalogEntry e = rogue1(tr);
        src.seed = e.seed;
        src.field = e.eval;
    } else if (solution == "rogue2") {
        const bool shaped = p.at("S0") != 0.0 || p.at("S1") != 0.0 || p.at("S2") != 0.0;
        if (as_flag(p.at("engine"), "engine") || shaped) return rogue_engine(src, 2);
        const CatalogEntry e = rogue2(tr);
        src.seed = e.seed;
        src.field = e.eval;
    } else if (solution == "rogue3") {
        return rogue_engine(src, 3);
    } else if (solution == "engine-nfold") {
        const Seed seed = seed_from(p);
        const int n = as_int(p.at("n"), "n");
        if (n < 1 || n > 3) throw Error(ErrorCode::InvalidConfig, "n must be 1, 2 or 3");
        std::vector<cd> lambdas;
        for (int k = 1; k <= n; ++k)
            lambdas.emplace_back(p.at("re" + std::to_string(k)), p.at("im" + std::to_string(k)));
        src.engine = true;
        src.seed = seed;
        src.field = engine_field(n_fold(build_reduced_set(lambdas, seed), seed, dt_options(precision)));
    } else if (solution == "engine-degenerate") {
        const Seed seed = seed_from(p);
        DegenerationSpec spec;
        spec.lambda_c = cd(p.at("re"), p.at("im"));
        spec.epsilon = p.at("eps");
        spec.n = as_int(p.at("n"), "n");
        spec.phases = {p.at("S0"), p.at("S1"), p.at("S2")};
        src.engine = true;
        src.seed = seed;
        src.field = engine_field(degenerate_limit(spec, seed, dt_options(precision)));
    }
    return src;
}

Grid2D parse_grid(const std::string& spec) {
    std::vector<std::string> axes;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) axes.push_back(part);
    if (axes.size() != 2) throw Error(ErrorCode::InvalidConfig, "grid must be 'min:max:count,min:max:count'");
    double lo[2], hi[2];
    std::size_t n[2];
    for (int a = 0; a < 2; ++a) {
        std::vector<std::string> f;
        std::stringstream as(axes[a]);
        while (std::getline(as, part, ':')) f.push_back(part);
        if (f.size() != 3) throw Error(ErrorCode::InvalidConfig, "axis '" + axes[a] + "' is not min:max:count");
        try {
            std::size_t used = 0;
            lo[a] = std::stod(f[0], &used);
            if (used != f[0].size()) throw std::invalid_argument(f[0]);
            hi[a] = std::stod(f[1], &used);
            if (used != f[1].size()) throw std::invalid_argument(f[1]);
            const long long c = std::stoll(f[2], &used);
            if (used != f[2].size() || c < 2) throw std::invalid_argument(f[2]);
            n[a] = std::size_t(c);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::InvalidConfig, "cannot parse axis '" + axes[a] + "'");
        }
    }
    try {
        return Grid2D::make(lo[0], hi[0], n[0], lo[1], hi[1], n[1]);
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidConfig, e.what());
    }
}

std::string format_grid(const Grid2D& g) {
    auto s = [](double v) {
        char b[64];
        std::snprintf(b, sizeof b, "%g", v);
        return std::string(b);
    };
    return s(g.x_min) + ":" + s(g.x_max) + ":" + std::to_string(g.nx) + "," + s(g.t_min) + ":" + s(g.t_max) + ":" +
           std::to_string(g.nt);
}

Transcription parse_transcription(const std::string& s) {
    if (s == "printed") return Transcription::Printed;
    if (s == "corrected") return Transcription::Corrected;
    throw Error(ErrorCode::InvalidConfig, "transcription must be 'printed' or 'corrected'");
}

std::string fmt_num(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

std::string to_csv(const ComplexField2D& f) {
    const Grid2D& g = f.grid();
    std::string o = "x,t,intensity,re,im\n";
    o.reserve(g.size() * 96);
    auto num = [](double v) {
        if (std::isnan(v)) return std::string("nan");
        return fmt_num(v);
    };
    for (std::size_t j = 0; j < g.nt; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const cd q = f(i, j);
            o += num(g.x(i)) + "," + num(g.t(j)) + "," + num(std::norm(q)) + "," + num(q.real()) + "," +
                 num(q.imag()) + "\n";
        }
    return o;
}

std::string to_json(const ComplexField2D& f, const SolutionSource& src) {
    const Grid2D& g = f.grid();
    std::string o = "{\n  \"solution\": " + json_str(src.solution) + ",\n  \"params\": " + params_obj(src.params) +
                    ",\n  \"grid\": " + grid_obj(g) + ",\n";
    auto block = [&](const char* key, auto get) {
        std::string b = "  " + json_str(key) + ": [\n";
        for (std::size_t j = 0; j < g.nt; ++j) {
            b += "    [";
            for (std::size_t i = 0; i < g.nx; ++i) {
                if (i) b += ", ";
                b += fmt_num(get(f(i, j)));
            }
            b += j + 1 < g.nt ? "],\n" : "]\n";
        }
        return b + "  ]";
    };
    o += block("data", [](cd q) { return std::norm(q); }) + ",\n";
    o += block("re", [](cd q) { return q.real(); }) + ",\n";
    o += block("im", [](cd q) { return q.imag(); }) + "\n}\n";
    return o;
}

std::string to_pgm(const ComplexField2D& f) {
    const Grid2D& g = f.grid();
    const std::vector<double> h = f.intensity();
    double mx = 0.0;
    for (double v : h)
        if (std::isfinite(v)) mx = std::max(mx, v);
    std::string o = "P5\n" + std::to_string(g.nx) + " " + std::to_string(g.nt) + "\n255\n";
    // first image row is t_max
    for (std::size_t r = 0; r < g.nt; ++r) {
        const std::size_t j = g.nt - 1 - r;
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double v = h[j * g.nx + i];
            const double u = (std::isfinite(v) && mx > 0.0) ? std::clamp(v / mx, 0.0, 1.0) : 0.0;
            o += char(static_cast<unsigned char>(std::lround(255.0 * u)));
        }
    }
    return o;
}

std::string meta_json(const SolutionSource& src, const Grid2D& g, const std::string& format) {
    const ConventionVariant v{+1, VConjugation::GIndependent};
    return "{\n  \"tool\": \"kdnls\",\n  \"version\": " + json_str(kToolVersion) + ",\n  \"solution\": " +
           json_str(src.solution) + ",\n  \"params\": " + params_obj(src.params) + ",\n  \"grid\": " + grid_obj(g) +
           ",\n  \"format\": " + json_str(format) + ",\n  \"transcription\": " + json_str(to_string(src.transcription)) +
           ",\n  \"engine\": " + (src.engine ? "true" : "false") + ",\n  \"precision\": " +
           json_str(to_string(src.precision)) + ",\n  \"convention_variant\": " + json_str(v.name()) + "\n}\n";
}

std::string peaks_json(const PeakSet& p, const SolutionSource& src, const Grid2D& g) {
    std::string o = "{\n  \"solution\": " + json_str(src.solution) + ",\n  \"params\": " + params_obj(src.params) +
                    ",\n  \"grid\": " + grid_obj(g) + ",\n  \"background\": " + fmt_num(p.background) +
                    ",\n  \"classification\": " + json_str(to_string(p.classification)) +
                    ",\n  \"ring_count\": " + std::to_string(p.ring_count) +
                    ",\n  \"has_center\": " + (p.has_center ? "true" : "false") +
                    ",\n  \"count\": " + std::to_string(p.peaks.size()) + ",\n  \"peaks\": [";
    for (std::size_t k = 0; k < p.peaks.size(); ++k) {
        const Peak& q = p.peaks[k];
        o += std::string(k ? ",\n" : "\n") + "    {\"x\": " + fmt_num(q.x) + ", \"t\": " + fmt_num(q.t) +
             ", \"height\": " + fmt_num(q.height) + ", \"prominence\": " + fmt_num(q.prominence) + "}";
    }
    return o + (p.peaks.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

const std::vector<FigureSpec>& figures() {
    static const std::vector<FigureSpec> f = [] {
        auto sq = [](double L, std::size_t n) { return Grid2D::make(-L, L, n, -L, L, n); };
        PeakOptions o2, o3;
        o2.order = 2;
        o3.order = 3;
        return std::vector<FigureSpec>{
            {1, "soliton1", {}, Grid2D::make(-8, 8, 401, -2, 2, 201), "one soliton, m1 = 1, n1 = 2", {}},
            {2, "soliton2", {}, sq(10, 201), "two solitons, m1 = 0.7, n1 = 0.3, m2 = 0.5, n2 = 0.5", {}},
            {3, "positon", {}, sq(10, 201), "positon, re = im = 0.8", {}},
            {4, "breather", {}, Grid2D::make(-10, 10, 401, -5, 5, 201), "breather on the a = -2, c = 1 background", {}},
            {5, "rogue1", {}, sq(4, 401), "first-order rogue wave", {}},
            {6, "rogue2", {}, sq(4, 801), "second-order rogue wave, fundamental", o2},
            {7, "rogue2", {{"S1", 500.0}}, sq(24, 481), "second-order rogue wave, S1 = 500", o2},
            {8, "rogue3", {}, Grid2D::make(-4, 4, 401, -2, 2, 2001), "third-order rogue wave, fundamental", o3},
            {9, "rogue3", {{"S1", 500.0}}, sq(30, 601), "third-order rogue wave, S1 = 500", o3},
            {10, "rogue3", {{"S2", 1000.0}}, sq(20, 401), "third-order rogue wave, S2 = 1000", o3},
        };
    }();
    return f;
}

std::string figure_command(const FigureSpec& f) {
    std::string c = "kdnls generate --solution " + f.solution;
    for (const auto& [k, v] : f.params) {
        char b[64];
        std::snprintf(b, sizeof b, "%g", v);
        c += " --param " + k + "=" + b;
    }
    char name[32];
    std::snprintf(name, sizeof name, "fig%02d.csv", f.number);
    return c + " --grid " + format_grid(f.grid) + " --format csv --output " + name;
}

}  // namespace kdnls
