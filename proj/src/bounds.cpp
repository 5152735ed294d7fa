#include "occsim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "occsim/errors.hpp"

namespace occsim {

namespace {

// Non-negative integer power by repeated multiplication. Monotone in the
// base (every step multiplies by the same factor), which keeps bound values
// monotone in t where the math says they should be.
double pow_int(double base, int exponent) {
    double r = 1.0;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

void check_lipschitz(double M) {
    if (!(M >= 0.0)) throw ArgumentError("Lipschitz constant must be >= 0, got " + std::to_string(M));
}

void check_horizon(int t) {
    if (t < 0) throw ArgumentError("time horizon must be >= 0, got " + std::to_string(t));
}

}  // namespace

double binomial_coefficient(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        throw ArgumentError("binomial coefficient needs 0 <= k <= n, got n=" + std::to_string(n) +
                            " k=" + std::to_string(k));
    }
    if (n > 60) {
        throw CapacityError("binomial coefficients are computed exactly only up to n=60, got n=" +
                            std::to_string(n));
    }
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<double>(r);
}

double walk_deviation_bound(const Graph& g, const WalkDistribution& wd, double M, int t) {
    check_lipschitz(M);
    check_horizon(t);
    if (t == 0) return 0.0;
    if (t > 60) {
        throw CapacityError("walk deviation bound needs exact binomials up to t=" + std::to_string(t) +
                            "; supported range is t <= 60");
    }
    if (wd.rows.size() < static_cast<std::size_t>(t)) {
        throw ArgumentError("walk distribution has " + std::to_string(wd.rows.size()) +
                            " rows; bound at t=" + std::to_string(t) + " needs rows 0.." +
                            std::to_string(t - 1));
    }
    g.check_vertex(wd.source);
    double total = 0.0;
    double m_pow = 1.0;  // M^s
    for (int s = 0; s < t; ++s) {
        const auto& row = wd.rows[static_cast<std::size_t>(s)];
        double reach = 0.0;  // sum_w walk_s(v->w) / sqrt(deg w)
        for (int w = 0; w < g.vertex_count(); ++w) {
            double mass = row[static_cast<std::size_t>(w)];
            if (mass > 0.0) reach += mass / std::sqrt(static_cast<double>(g.degree(w)));
        }
        total += binomial_coefficient(t, s + 1) * reach * m_pow;
        m_pow *= M;
    }
    return total;
}

double min_degree_deviation_bound(int delta, double M, int t) {
    if (delta < 1) throw ArgumentError("minimum degree must be >= 1, got " + std::to_string(delta));
    check_lipschitz(M);
    check_horizon(t);
    double growth = (M == 0.0) ? static_cast<double>(t) : (pow_int(1.0 + M, t) - 1.0) / M;
    return growth / std::sqrt(static_cast<double>(delta));
}

double polynomial_deviation_bound(int d, double M, double lambda, double rho, int t) {
    if (d < 1) throw ArgumentError("polynomial degree must be >= 1, got " + std::to_string(d));
    check_lipschitz(M);
    if (!(lambda >= 0.0)) throw ArgumentError("vertex-mass norm must be >= 0");
    if (!(rho >= 0.0)) throw ArgumentError("root-square-mass norm must be >= 0");
    check_horizon(t);
    double factor = pow_int(2.0, d) * (1.0 + M * lambda);
    double total = 0.0;
    double term = 1.0;  // 2^{d s} (1 + M lambda)^s
    for (int s = 0; s < t; ++s) {
        total += term;
        term *= factor;
    }
    return 2.0 * rho * total;
}

double expectation_gap_bound(const Graph& g, const WalkDistribution& wd, double M, int t) {
    check_horizon(t);
    double total = 0.0;
    for (int r = 0; r < t; ++r) total += walk_deviation_bound(g, wd, M, r);
    return total;
}

DiagonalBound diagonal_concentration_bound(const Graph& g, const InteractionPair& pair, double p,
                                           double eps, int t) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("initial density must lie in [0,1]");
    if (!(eps > 0.0)) throw ArgumentError("neighborhood slack eps must be > 0");
    if (t < 1) throw ArgumentError("diagonal bound is stated for t >= 1, got " + std::to_string(t));
    if (g.min_degree() < 1) {
        throw ValidationError("graph has an isolated vertex; neighborhood averages are undefined");
    }
    double q = std::max(p, 1.0 - p);
    double drift = theta(pair, p);
    DiagonalBound out;
    out.value = (q * drift + pair.lipschitz * eps) * std::exp(2.0 * pair.lipschitz * (t - 1));
    double raw = 1.0 - 2.0 * static_cast<double>(g.vertex_count()) *
                           std::exp(-2.0 * static_cast<double>(g.min_degree()) * eps * eps);
    out.vacuous = !(raw > 0.0);
    out.probability = out.vacuous ? 0.0 : raw;
    return out;
}

double diagonal_distance(std::span<const double> x, double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw ArgumentError("diagonal level must lie in [0,1]");
    double worst = 0.0;
    for (double v : x) worst = std::max(worst, std::abs(v - c));
    return worst;
}

}  // namespace occsim
