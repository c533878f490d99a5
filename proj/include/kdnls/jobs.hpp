#pragma once

#include <map>
#include <string>
#include <vector>

#include "kdnls/catalog.hpp"
#include "kdnls/darboux.hpp"
#include "kdnls/lax.hpp"
#include "kdnls/numerics.hpp"
#include "kdnls/verify.hpp"

namespace kdnls {

inline constexpr const char* kToolVersion = "1.0.0";

using ParamMap = std::map<std::string, double>;

struct ParamSpec {
    std::string key;
    double default_value;
    std::string help;
};

// Known solution names in CLI order.
const std::vector<std::string>& solution_names();

// Keys and defaults accepted by a solution; throws InvalidConfig for an unknown name.
const std::vector<ParamSpec>& param_schema(const std::string& solution);

struct SolutionSource {
    std::string solution;
    ParamMap params;  // effective values, defaults filled in
    Transcription transcription = Transcription::Corrected;
    Precision precision = Precision::Auto;
    bool engine = false;  // produced by the Darboux engine rather than a closed form
    Seed seed;
    PointFunction field;
};

// Unknown keys raise InvalidConfig.
SolutionSource build_solution(const std::string& solution, const ParamMap& params,
                              Transcription tr = Transcription::Corrected, Precision precision = Precision::Auto);

// "min:max:count,min:max:count"
Grid2D parse_grid(const std::string& spec);
std::string format_grid(const Grid2D& g);

Transcription parse_transcription(const std::string& s);

// 17 significant digits, lowercase exponent
std::string fmt_num(double v);

std::string to_csv(const ComplexField2D& f);
std::string to_json(const ComplexField2D& f, const SolutionSource& src);
std::string to_pgm(const ComplexField2D& f);
std::string meta_json(const SolutionSource& src, const Grid2D& g, const std::string& format);
std::string peaks_json(const PeakSet& p, const SolutionSource& src, const Grid2D& g);

struct FigureSpec {
    int number;
    std::string solution;
    ParamMap params;
    Grid2D grid;
    std::string caption;
    PeakOptions peaks;
};

const std::vector<FigureSpec>& figures();

// The CLI line that regenerates a figure.
std::string figure_command(const FigureSpec& f);

}  // namespace kdnls
