#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "kdnls/lax.hpp"
#include "kdnls/numerics.hpp"

namespace kdnls {

enum class Precision { Double, Extended, Auto };

const char* to_string(Precision p);
Precision parse_precision(const std::string& s);

struct SpectralSet {
    std::vector<SpectralDatum> data;
    bool reduction = false;
    std::size_t order() const { return data.size() / 2; }
};

struct DegenerationSpec {
    cd lambda_c;
    double epsilon = 1e-2;
    int n = 1;
    PhasePolynomial phases;
    // unit-modulus directions; empty means the n-th roots of unity
    std::vector<cd> offsets;
};

enum class DTStatus { Ok, DenominatorVanishes, SingularOmega, ConditionBlowup, NonFinite };

const char* to_string(DTStatus s);

struct DTValue {
    cd Q{0.0, 0.0};
    double condition = 0.0;
    DTStatus status = DTStatus::Ok;
    bool extended = false;
};

struct DTOptions {
    Precision precision = Precision::Auto;
    double condition_bound = 1e12;
    double extended_condition_bound = 1e28;
};

class DTOutput {
public:
    using Eval = std::function<DTValue(double, double)>;
    using CompanionEval = std::function<cd(double, double)>;

    DTOutput(Eval q, CompanionEval r) : eval_(std::move(q)), r_(std::move(r)) {}

    DTValue evaluate(double x, double t) const { return eval_(x, t); }
    // NaN wherever the evaluation did not succeed
    cd Q_new(double x, double t) const;
    double condition_estimate(double x, double t) const { return eval_(x, t).condition; }
    // Throws DenominatorVanishes / SingularOmega / ConditionBlowup / NonFinite.
    cd at(double x, double t) const;
    // R^[n] from the companion formula
    cd R_new(double x, double t) const { return r_ ? r_(x, t) : cd(NAN, NAN); }

    PointFunction as_function() const {
        return [self = *this](double x, double t) { return self.Q_new(x, t); };
    }

private:
    Eval eval_;
    CompanionEval r_;
};

DTOutput one_fold(const SpectralSet& set, const Seed& seed);
DTOutput n_fold(const SpectralSet& set, const Seed& seed, const DTOptions& opt = {});

// For each representative lambda emits (lambda, conj lambda) with the mirrored
// eigenfunction pair. Weights are ignored for the zero seed.
SpectralSet build_reduced_set(const std::vector<cd>& lambdas, const Seed& seed,
                              const std::vector<std::pair<cd, cd>>& weights = {});

// Root of s(lambda) = 0 closest to the guess.
cd critical_eigenvalue(const Seed& seed, cd guess = cd(1.0, 1.0));

DTOutput degenerate_limit(const DegenerationSpec& spec, const Seed& seed, DTOptions opt = {});

// Used by degenerate_limit; exposed for tests.
SpectralSet degenerate_set(const DegenerationSpec& spec, const Seed& seed);

}  // namespace kdnls
