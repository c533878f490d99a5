#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kdnls/lax.hpp"
#include "kdnls/numerics.hpp"

namespace kdnls {

// Printed: the closed form exactly as typeset, literals untouched.
// Corrected: the same solution with its typographical errors repaired (or, where
// the typeset form is not recoverable, an exact closed form of the same solution).
enum class Transcription { Printed, Corrected };

const char* to_string(Transcription t);

struct CatalogEntry {
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    Transcription transcription = Transcription::Corrected;
    // background the entry lives on; supplies alpha and theta to the residual
    Seed seed;
    // NaN on the pole set (|denominator| below 1e-12 of the numerator scale)
    PointFunction eval;

    cd operator()(double x, double t) const { return eval(x, t); }
};

CatalogEntry one_soliton(double m1, double n1, double alpha = 1.0, double theta_p = 1.0, double theta_q = 1.0,
                         Transcription tr = Transcription::Corrected);

// The printed form leaves M undefined; it is taken as 8 m1 n1 m2 n2 (|l1|^2 + |l2|^2)
// unless supplied.
CatalogEntry two_soliton(double m1, double n1, double m2, double n2, double alpha = 1.0,
                         Transcription tr = Transcription::Corrected, double printed_M = NAN);

CatalogEntry positon(double re1, double im1, Transcription tr = Transcription::Corrected);

// fixed instance a = -2, c = 1, lambda = 0.5 + 0.5 i
CatalogEntry breather(Transcription tr = Transcription::Corrected);

// fixed instance a = -2, c = 1, lambda_c = 1 + i
CatalogEntry rogue1(Transcription tr = Transcription::Corrected);
CatalogEntry rogue2(Transcription tr = Transcription::Corrected);

}  // namespace kdnls
