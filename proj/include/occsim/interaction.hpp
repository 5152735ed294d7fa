#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace occsim {

// One update function [0,1] -> [0,1] used as a flip probability. All kinds
// carry an exact analytic Lipschitz constant; no numeric estimation anywhere.
//
// Supported shapes:
//   constant(c)            y -> c
//   affine(a, b)           y -> a*y + b  (endpoints must land in [0,1])
//   logistic(r)            y -> r*y*(1-y), 0 <= r <= 4
//   piecewise_linear(pts)  linear interpolation through breakpoints on [0,1]
// plus the structural complement y -> 1 - base(y). Complements of constant,
// affine and piecewise-linear specs normalize to plain specs; only logistic
// keeps an explicit complement flag.
class FunctionSpec {
public:
    enum class Kind { kConstant, kAffine, kLogistic, kPiecewiseLinear };

    static FunctionSpec constant(double c);
    static FunctionSpec affine(double a, double b);
    static FunctionSpec logistic(double r);
    static FunctionSpec piecewise_linear(std::vector<std::pair<double, double>> breakpoints);

    // The function y -> 1 - f(y).
    FunctionSpec complement() const;

    // Evaluates at y in [0,1] (ArgumentError outside), result clamped to
    // [0,1] to absorb last-ulp rounding excursions.
    double operator()(double y) const;

    double lipschitz() const { return lipschitz_; }
    Kind kind() const { return kind_; }
    bool complemented() const { return complemented_; }
    double constant_value() const { return a_; }
    double affine_slope() const { return a_; }
    double affine_offset() const { return b_; }
    double logistic_rate() const { return a_; }
    const std::vector<std::pair<double, double>>& breakpoints() const { return breakpoints_; }

    // Kind, complement flag and parameters agree to within 1e-12. Used for
    // structural pair classification, never for function-value guessing.
    bool structurally_equal(const FunctionSpec& other) const;

    // Canonical text form, parse() round-trips it.
    std::string to_text() const;

    // Accepts "constant:0.3", "affine:a,b", "logistic:4",
    // "pwl:x0,y0;x1,y1;...", the aliases "voter-f" (1-y) / "voter-g" (y),
    // and a "1-" prefix for the complement of any of those.
    static FunctionSpec parse(std::string_view text);

private:
    FunctionSpec() = default;

    Kind kind_ = Kind::kConstant;
    bool complemented_ = false;
    double a_ = 0.0;  // constant value / affine slope / logistic rate
    double b_ = 0.0;  // affine offset
    std::vector<std::pair<double, double>> breakpoints_;
    double lipschitz_ = 0.0;
};

// An update pair (f: 1->0 probability, g: 0->1 probability) with its derived
// classification. lipschitz is max(Lip(f), Lip(g)); memoryless means the next
// state ignores the current own state (1 - f = g structurally); voter
// additionally means g is the identity.
struct InteractionPair {
    FunctionSpec f;
    FunctionSpec g;
    double lipschitz = 0.0;
    bool memoryless = false;
    bool voter = false;

    static InteractionPair make(FunctionSpec f, FunctionSpec g);
};

double evaluate(const FunctionSpec& spec, double y);

// One-vertex mean update: gamma(x, y) = x*(1 - f(y)) + (1 - x)*g(y),
// the expected next occupancy of a vertex at density x whose neighborhood
// average is y. Both arguments must lie in [0,1]; the result is clamped.
double gamma(const InteractionPair& pair, double x, double y);

// Diagonal map gamma_tilde(s) = gamma(s, s); for memoryless pairs this is
// exactly g.
double gamma_tilde(const InteractionPair& pair, double s);

// Orbit [p, gamma_tilde(p), ..., gamma_tilde^t(p)] (t + 1 values).
std::vector<double> gamma_tilde_orbit(const InteractionPair& pair, double p, int t);

// Own-state sensitivity |1 - f(p) - g(p)|; exactly zero for structurally
// memoryless pairs.
double theta(const InteractionPair& pair, double p);

}  // namespace occsim
