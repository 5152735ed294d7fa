#include "occsim/interaction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "occsim/errors.hpp"

namespace occsim {

namespace {

constexpr double kParamTolerance = 1e-12;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

bool param_eq(double a, double b) { return std::fabs(a - b) <= kParamTolerance; }

void check_prob(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ArgumentError(std::string(what) + " must lie in [0,1]");
}

double parse_number(std::string_view token, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ArgumentError("could not parse " + std::string(what) + " from '" +
                            std::string(token) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    size_t pos = 0;
    while (true) {
        size_t next = text.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

FunctionSpec FunctionSpec::constant(double c) {
    check_prob(c, "constant value");
    FunctionSpec s;
    s.kind_ = Kind::kConstant;
    s.a_ = c;
    s.lipschitz_ = 0.0;
    return s;
}

FunctionSpec FunctionSpec::affine(double a, double b) {
    check_prob(b, "affine value at 0");
    check_prob(a + b, "affine value at 1");
    FunctionSpec s;
    s.kind_ = Kind::kAffine;
    s.a_ = a;
    s.b_ = b;
    s.lipschitz_ = std::fabs(a);
    return s;
}

FunctionSpec FunctionSpec::logistic(double r) {
    if (!(r >= 0.0 && r <= 4.0)) throw ArgumentError("logistic rate must lie in [0,4]");
    FunctionSpec s;
    s.kind_ = Kind::kLogistic;
    s.a_ = r;
    // sup over [0,1] of |d/dy r*y*(1-y)| = r * sup|1-2y| = r.
    s.lipschitz_ = r;
    return s;
}

FunctionSpec FunctionSpec::piecewise_linear(std::vector<std::pair<double, double>> breakpoints) {
    if (breakpoints.size() < 2)
        throw ArgumentError("piecewise-linear spec needs at least two breakpoints");
    if (breakpoints.front().first != 0.0 || breakpoints.back().first != 1.0)
        throw ArgumentError("piecewise-linear breakpoints must start at x=0 and end at x=1");
    double max_slope = 0.0;
    for (size_t i = 0; i < breakpoints.size(); ++i) {
        check_prob(breakpoints[i].second, "piecewise-linear value");
        if (i > 0) {
            double dx = breakpoints[i].first - breakpoints[i - 1].first;
            if (!(dx > 0.0))
                throw ArgumentError("piecewise-linear breakpoints must increase strictly in x");
            max_slope =
                std::max(max_slope, std::fabs(breakpoints[i].second - breakpoints[i - 1].second) / dx);
        }
    }
    FunctionSpec s;
    s.kind_ = Kind::kPiecewiseLinear;
    s.breakpoints_ = std::move(breakpoints);
    s.lipschitz_ = max_slope;
    return s;
}

FunctionSpec FunctionSpec::complement() const {
    switch (kind_) {
        case Kind::kConstant:
            return constant(1.0 - a_);
        case Kind::kAffine:
            return affine(-a_, 1.0 - b_);
        case Kind::kPiecewiseLinear: {
            auto pts = breakpoints_;
            for (auto& p : pts) p.second = 1.0 - p.second;
            return piecewise_linear(std::move(pts));
        }
        case Kind::kLogistic: {
            FunctionSpec s = *this;
            s.complemented_ = !s.complemented_;
            return s;
        }
    }
    throw ArgumentError("unknown function kind");
}

double FunctionSpec::operator()(double y) const {
    if (!(y >= 0.0 && y <= 1.0)) throw ArgumentError("function argument must lie in [0,1]");
    double v = 0.0;
    switch (kind_) {
        case Kind::kConstant:
            v = a_;
            break;
        case Kind::kAffine:
            v = a_ * y + b_;
            break;
        case Kind::kLogistic:
            v = a_ * y * (1.0 - y);
            break;
        case Kind::kPiecewiseLinear: {
            // First breakpoint strictly right of y bounds the segment.
            size_t hi = 1;
            while (hi + 1 < breakpoints_.size() && breakpoints_[hi].first < y) ++hi;
            auto [x0, y0] = breakpoints_[hi - 1];
            auto [x1, y1] = breakpoints_[hi];
            v = y0 + (y1 - y0) * ((y - x0) / (x1 - x0));
            break;
        }
    }
    if (complemented_) v = 1.0 - v;
    return clamp01(v);
}

bool FunctionSpec::structurally_equal(const FunctionSpec& other) const {
    if (kind_ != other.kind_ || complemented_ != other.complemented_) return false;
    switch (kind_) {
        case Kind::kConstant:
        case Kind::kLogistic:
            return param_eq(a_, other.a_);
        case Kind::kAffine:
            return param_eq(a_, other.a_) && param_eq(b_, other.b_);
        case Kind::kPiecewiseLinear: {
            if (breakpoints_.size() != other.breakpoints_.size()) return false;
            for (size_t i = 0; i < breakpoints_.size(); ++i)
                if (!param_eq(breakpoints_[i].first, other.breakpoints_[i].first) ||
                    !param_eq(breakpoints_[i].second, other.breakpoints_[i].second))
                    return false;
            return true;
        }
    }
    return false;
}

std::string FunctionSpec::to_text() const {
    std::string prefix = complemented_ ? "1-" : "";
    switch (kind_) {
        case Kind::kConstant:
            return prefix + "constant:" + format_number(a_);
        case Kind::kAffine:
            return prefix + "affine:" + format_number(a_) + "," + format_number(b_);
        case Kind::kLogistic:
            return prefix + "logistic:" + format_number(a_);
        case Kind::kPiecewiseLinear: {
            std::string out = prefix + "pwl:";
            for (size_t i = 0; i < breakpoints_.size(); ++i) {
                if (i) out += ";";
                out += format_number(breakpoints_[i].first) + "," +
                       format_number(breakpoints_[i].second);
            }
            return out;
        }
    }
    throw ArgumentError("unknown function kind");
}

FunctionSpec FunctionSpec::parse(std::string_view text) {
    if (text.rfind("1-", 0) == 0) return parse(text.substr(2)).complement();
    if (text == "voter-f") return affine(-1.0, 1.0);
    if (text == "voter-g") return affine(1.0, 0.0);
    size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ArgumentError("function spec '" + std::string(text) + "' has no parameters");
    std::string_view kind = text.substr(0, colon);
    std::string_view args = text.substr(colon + 1);
    if (kind == "constant") return constant(parse_number(args, "constant value"));
    if (kind == "logistic") return logistic(parse_number(args, "logistic rate"));
    if (kind == "affine") {
        auto parts = split(args, ',');
        if (parts.size() != 2) throw ArgumentError("affine spec needs 'a,b'");
        return affine(parse_number(parts[0], "affine slope"),
                      parse_number(parts[1], "affine offset"));
    }
    if (kind == "pwl") {
        std::vector<std::pair<double, double>> pts;
        for (auto part : split(args, ';')) {
            auto coords = split(part, ',');
            if (coords.size() != 2) throw ArgumentError("pwl breakpoint needs 'x,y'");
            pts.emplace_back(parse_number(coords[0], "pwl x"), parse_number(coords[1], "pwl y"));
        }
        return piecewise_linear(std::move(pts));
    }
    throw ArgumentError("unknown function kind '" + std::string(kind) + "'");
}

InteractionPair InteractionPair::make(FunctionSpec f, FunctionSpec g) {
    double lipschitz = std::max(f.lipschitz(), g.lipschitz());
    bool memoryless = f.complement().structurally_equal(g);
    bool voter = memoryless && g.structurally_equal(FunctionSpec::affine(1.0, 0.0));
    return InteractionPair{std::move(f), std::move(g), lipschitz, memoryless, voter};
}

double evaluate(const FunctionSpec& spec, double y) { return spec(y); }

double gamma(const InteractionPair& pair, double x, double y) {
    if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError("occupancy argument must lie in [0,1]");
    return clamp01(x * (1.0 - pair.f(y)) + (1.0 - x) * pair.g(y));
}

double gamma_tilde(const InteractionPair& pair, double s) { return gamma(pair, s, s); }

std::vector<double> gamma_tilde_orbit(const InteractionPair& pair, double p, int t) {
    if (t < 0) throw ArgumentError("orbit length must be non-negative");
    check_prob(p, "orbit start");
    std::vector<double> orbit;
    orbit.reserve(t + 1);
    orbit.push_back(p);
    for (int s = 0; s < t; ++s) orbit.push_back(gamma_tilde(pair, orbit.back()));
    return orbit;
}

double theta(const InteractionPair& pair, double p) {
    check_prob(p, "density argument");
    if (pair.memoryless) return 0.0;
    return std::fabs(1.0 - pair.f(p) - pair.g(p));
}

}  // namespace occsim
