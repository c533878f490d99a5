// kdnls: generate solution grids, run verification suites, analyze patterns.
// Exit codes: 0 ok, 2 invalid config, 3 I/O failure, 4 verification failure.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "kdnls/acceptance.hpp"
#include "kdnls/jobs.hpp"

using namespace kdnls;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0, kInvalid = 2, kIO = 3, kVerify = 4;

struct JobConfig {
    std::string command;
    std::string solution;
    ParamMap params;
    std::optional<Grid2D> grid;
    std::string output = "-";
    std::string format = "csv";
    Precision precision = Precision::Auto;
    Transcription transcription = Transcription::Corrected;
    std::string suite;
    int figure = 0;
    int refinements = 3;
};

ParamMap parse_params(const std::vector<std::string>& kv) {
    ParamMap p;
    for (const std::string& s : kv) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidConfig, "--param expects key=value, got '" + s + "'");
        const std::string key = s.substr(0, eq), val = s.substr(eq + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            p[key] = v;
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::InvalidConfig, "parameter '" + key + "' is not a number: '" + val + "'");
        }
    }
    return p;
}

// File values first; command-line flags replace them afterwards.
void apply_config_file(const std::string& path, JobConfig& c) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IOFailure, "cannot read config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }
    static const std::set<std::string> known = {"command", "solution", "params", "grid", "output", "format",
                                                "precision", "transcription", "suite", "figure", "refinements"};
    try {
        for (const auto& [k, v] : j.items())
            if (!known.count(k)) throw Error(ErrorCode::InvalidConfig, "unknown config key '" + k + "'");
        if (j.contains("solution")) c.solution = j["solution"].get<std::string>();
        if (j.contains("params"))
            for (const auto& [k, v] : j["params"].items()) c.params[k] = v.get<double>();
        if (j.contains("grid")) {
            const json& g = j["grid"];
            if (g.is_string())
                c.grid = parse_grid(g.get<std::string>());
            else
                c.grid = Grid2D::make(g.at("x_min").get<double>(), g.at("x_max").get<double>(), g.at("nx").get<std::size_t>(),
                                      g.at("t_min").get<double>(), g.at("t_max").get<double>(), g.at("nt").get<std::size_t>());
        }
        if (j.contains("output")) c.output = j["output"].get<std::string>();
        if (j.contains("format")) c.format = j["format"].get<std::string>();
        if (j.contains("precision")) c.precision = parse_precision(j["precision"].get<std::string>());
        if (j.contains("transcription")) c.transcription = parse_transcription(j["transcription"].get<std::string>());
        if (j.contains("suite")) c.suite = j["suite"].get<std::string>();
        if (j.contains("figure")) c.figure = j["figure"].get<int>();
        if (j.contains("refinements")) c.refinements = j["refinements"].get<int>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("bad config value: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidGrid) throw Error(ErrorCode::InvalidConfig, e.what());
        throw;
    }
}

void write_file(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IOFailure, "cannot open '" + path + "' for writing");
    out << data;
    out.close();
    if (!out) throw Error(ErrorCode::IOFailure, "write to '" + path + "' failed");
}

void fill_from_figure(JobConfig& c) {
    if (c.figure == 0) return;
    for (const FigureSpec& f : figures()) {
        if (f.number != c.figure) continue;
        if (c.solution.empty()) c.solution = f.solution;
        for (const auto& [k, v] : f.params) c.params.emplace(k, v);
        if (!c.grid) c.grid = f.grid;
        return;
    }
    throw Error(ErrorCode::InvalidConfig, "no figure " + std::to_string(c.figure));
}

const FigureSpec* figure_for(const JobConfig& c) {
    for (const FigureSpec& f : figures())
        if (f.number == c.figure) return &f;
    return nullptr;
}

SolutionSource source_for(const JobConfig& c) {
    if (c.solution.empty()) throw Error(ErrorCode::InvalidConfig, "--solution is required");
    if (!c.grid) throw Error(ErrorCode::InvalidConfig, "--grid is required");
    return build_solution(c.solution, c.params, c.transcription, c.precision);
}

int run_generate(const JobConfig& c) {
    if (c.format != "csv" && c.format != "json" && c.format != "pgm")
        throw Error(ErrorCode::InvalidConfig, "format must be csv, json or pgm");
    const SolutionSource src = source_for(c);
    const ComplexField2D f = sample(src.field, *c.grid);
    const std::string body = c.format == "csv" ? to_csv(f) : c.format == "json" ? to_json(f, src) : to_pgm(f);
    write_file(c.output, body);
    if (c.output != "-") write_file(c.output + ".meta.json", meta_json(src, *c.grid, c.format));
    return kOk;
}

int run_analyze(const JobConfig& c) {
    const SolutionSource src = source_for(c);
    PeakOptions opt;
    if (const FigureSpec* f = figure_for(c)) opt = f->peaks;
    if (c.solution == "rogue2") opt.order = 2;
    if (c.solution == "rogue3") opt.order = 3;
    const PeakSet p = peak_analysis(sample(src.field, *c.grid), opt);
    write_file(c.output, peaks_json(p, src, *c.grid));
    return kOk;
}

std::set<int> suite_ids(const std::string& s) {
    if (s == "full") return {};
    // criteria that finish in a few seconds
    if (s == "fast") return {1, 3, 4, 7};
    std::set<int> ids;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            ids.insert(std::stoi(part));
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::InvalidConfig, "suite must be full, fast or a list of criterion ids");
        }
    }
    for (int id : ids)
        if (id < 1 || id > 8) throw Error(ErrorCode::InvalidConfig, "criterion ids run from 1 to 8");
    return ids;
}

int run_verify(const JobConfig& c) {
    if (!c.suite.empty()) {
        const auto results = run_acceptance(suite_ids(c.suite), [](const CriterionResult& r) {
            std::fprintf(stderr, "%s\n", summary_line(r).c_str());
            for (const Check& k : r.checks)
                if (!k.ok) std::fprintf(stderr, "    FAIL %s: %s\n", k.label.c_str(), k.detail.c_str());
        });
        write_file(c.output, results_json(results));
        for (const CriterionResult& r : results)
            if (!r.passed()) return kVerify;
        return kOk;
    }
    const SolutionSource src = source_for(c);
    const ConventionVariant v{+1, VConjugation::GIndependent};
    const ResidualReport rep = pde_residual(src.field, src.seed, v, *c.grid, c.refinements);
    const bool ok = rep.estimated_order >= 1.7 && rep.estimated_order <= 2.3;
    json j;
    j["solution"] = src.solution;
    j["params"] = src.params;
    j["transcription"] = to_string(src.transcription);
    j["variant"] = rep.variant.name();
    j["estimated_order"] = rep.estimated_order;
    j["excluded_nodes"] = rep.excluded_nodes;
    j["passed"] = ok;
    for (const ResidualNorm& n : rep.norms)
        j["norms"].push_back({{"h", n.h}, {"max_residual", n.max_residual}, {"mean_residual", n.mean_residual}});
    write_file(c.output, j.dump(2) + "\n");
    std::fprintf(stderr, "%s order %.3f (%s)\n", src.solution.c_str(), rep.estimated_order, ok ? "pass" : "fail");
    return ok ? kOk : kVerify;
}

int exit_code(const Error& e) {
    switch (e.code()) {
        case ErrorCode::IOFailure: return kIO;
        case ErrorCode::VerificationFailed: return kVerify;
        default: return kInvalid;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kundu-DNLS solutions by Darboux transformation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    JobConfig cfg;
    std::string config_path, grid_text, precision_text, transcription_text;
    std::vector<std::string> param_text;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON job file; flags override its values");
        s->add_option("--solution", cfg.solution, "solution name")
            ->check(CLI::IsMember(solution_names()));
        s->add_option("--param", param_text, "key=value, repeatable")->allow_extra_args(false);
        s->add_option("--grid", grid_text, "xmin:xmax:nx,tmin:tmax:nt");
        s->add_option("--output,-o", cfg.output, "output path, - for stdout");
        s->add_option("--precision", precision_text, "double | extended | auto");
        s->add_option("--transcription", transcription_text, "corrected | printed (closed forms only)");
        s->add_option("--figure", cfg.figure, "fill solution, params and grid from a figure number");
    };
    CLI::App* gen = app.add_subcommand("generate", "sample a solution on a grid");
    add_common(gen);
    gen->add_option("--format", cfg.format, "csv | json | pgm");
    CLI::App* ver = app.add_subcommand("verify", "PDE residual of one solution, or an acceptance suite");
    add_common(ver);
    ver->add_option("--suite", cfg.suite, "full | fast | comma-separated criterion ids");
    ver->add_option("--refinements", cfg.refinements, "grid levels for the residual");
    CLI::App* ana = app.add_subcommand("analyze", "intensity peaks and pattern class as JSON");
    add_common(ana);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        const std::string flag_solution = cfg.solution, flag_output = cfg.output, flag_format = cfg.format,
                          flag_suite = cfg.suite;
        const int flag_figure = cfg.figure, flag_ref = cfg.refinements;
        if (!config_path.empty()) {
            JobConfig file;
            apply_config_file(config_path, file);
            file.command = app.get_subcommands().front()->get_name();
            // flags given on the command line win
            if (!flag_solution.empty()) file.solution = flag_solution;
            if (gen->count("--output") + ver->count("--output") + ana->count("--output")) file.output = flag_output;
            if (gen->count("--format")) file.format = flag_format;
            if (!flag_suite.empty()) file.suite = flag_suite;
            if (flag_figure) file.figure = flag_figure;
            if (ver->count("--refinements")) file.refinements = flag_ref;
            cfg = file;
        }
        cfg.command = app.get_subcommands().front()->get_name();
        for (const auto& [k, v] : parse_params(param_text)) cfg.params[k] = v;
        if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
        if (!precision_text.empty()) cfg.precision = parse_precision(precision_text);
        if (!transcription_text.empty()) cfg.transcription = parse_transcription(transcription_text);
        if (const char* env = std::getenv("KDNLS_PRECISION")) {
            const std::string e = env;
            if (e != "double" && e != "extended")
                throw Error(ErrorCode::InvalidConfig, "KDNLS_PRECISION must be 'double' or 'extended'");
            cfg.precision = parse_precision(e);
        }
        fill_from_figure(cfg);

        if (cfg.command == "generate") return run_generate(cfg);
        if (cfg.command == "analyze") return run_analyze(cfg);
        return run_verify(cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "kdnls: %s\n", e.what());
        return exit_code(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "kdnls: %s\n", e.what());
        return kInvalid;
    }
}
