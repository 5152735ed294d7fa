#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "occsim/dynamics.hpp"
#include "occsim/graph.hpp"

namespace occsim {

// Homogeneous multilinear observable of degree d over |V| binary/real
// variables: P(x) = sum over terms W (d-element vertex sets) of coeff_W *
// prod_{w in W} x_w. Terms are kept in canonical (sorted-tuple) order so that
// per-vertex masses and norms never depend on insertion order.
class Polynomial {
public:
    class Builder {
    public:
        // nvars: number of variables (host vertex count); degree >= 1.
        Builder(int nvars, int degree);
        // Accumulates coeff onto the term with this vertex set (any order,
        // no duplicates). Wrong arity or repeated vertices -> ArgumentError.
        Builder& add(std::span<const int> vertices, double coeff);
        Polynomial build();

    private:
        int nvars_;
        int degree_;
        std::map<std::vector<int>, double> terms_;
    };

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    int term_count() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<std::vector<int>>& term_vertices() const { return term_vertices_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    // Per-vertex mass c_v = sum of |coeff_W| over terms containing v.
    double vertex_mass(int v) const;
    const std::vector<double>& vertex_masses() const { return vertex_mass_; }
    double norm_l1() const { return norm_l1_; }  // sum_v c_v
    double norm_l2() const { return norm_l2_; }  // sqrt(sum_v c_v^2)

    double evaluate(const StateVector& s) const;
    double evaluate(std::span<const double> x) const;

    // One term per line: "coeff v1 v2 ... vd". from_text round-trips.
    std::string to_text() const;
    static Polynomial from_text(std::string_view text, int nvars, int degree);

private:
    friend class Builder;
    int nvars_ = 0;
    int degree_ = 1;
    std::vector<std::vector<int>> term_vertices_;
    std::vector<double> coeffs_;
    std::vector<double> vertex_mass_;
    double norm_l1_ = 0.0;
    double norm_l2_ = 0.0;
};

// Degree-1 polynomial representing the neighborhood average of v: terms
// {w: w ~ v} with coefficient 1/deg(v). Its norms are 1 and deg(v)^{-1/2}.
Polynomial neighborhood_polynomial(const Graph& g, int v);

// True iff norm_l1 <= lambda and norm_l2 <= rho (both must be >= 0).
bool check_membership(const Polynomial& p, double lambda, double rho);

// A small pattern graph with its automorphism count (found by brute-force
// permutation enumeration at construction; at most 5 vertices, no isolated
// vertices).
class Motif {
public:
    Motif(std::string name, Graph shape);

    // Library: edge (K2), wedge (path with 2 edges), triangle, p3 (path with
    // 3 edges), c4 (4-cycle), k4 (K4).
    static Motif by_name(std::string_view name);
    static const std::vector<std::string>& names();

    const std::string& name() const { return name_; }
    const Graph& shape() const { return shape_; }
    int vertex_count() const { return shape_.vertex_count(); }
    int edge_count() const { return shape_.edge_count(); }
    long automorphism_count() const { return aut_; }

private:
    std::string name_;
    Graph shape_;
    long aut_ = 0;
};

// Symmetric edge-weight state over the host vertex set [n]: the weighted
// adjacency of a (possibly fractional) graph, zero on the diagonal. Binary
// states of a line graph of K_n embed via vertex_edges.
struct EdgeState {
    int n = 0;
    std::vector<double> w;  // n*n row-major

    explicit EdgeState(int host_n);
    double at(int j, int k) const { return w[static_cast<size_t>(j) * n + k]; }
    void set(int j, int k, double value);

    static EdgeState from_line_graph_state(int host_n,
                                           const std::vector<std::pair<int, int>>& vertex_edges,
                                           const StateVector& s);
    static EdgeState from_line_graph_state(int host_n,
                                           const std::vector<std::pair<int, int>>& vertex_edges,
                                           std::span<const double> x);
};

enum class DensityMethod { kAuto, kEnumerate, kClosedForm };

// Homomorphism density t(F, state): the average over all n^{|V(F)|} vertex
// maps of the product of edge weights along F's edges (maps collapsing an
// edge hit the zero diagonal). kAuto enumerates while n^{|V(F)|} <= 1e7 and
// otherwise falls back to closed forms (edge, wedge, triangle); a motif with
// neither path in budget raises CapacityError.
double homomorphism_density(const Motif& motif, const EdgeState& state,
                            DensityMethod method = DensityMethod::kAuto);

// The degree-|E(F)| polynomial over the edge variables of K_n whose value on
// a binary edge state equals (injective homomorphism count) / n^{|V(F)|}:
// each edge subset inducing a copy of F contributes aut(F) * n^{-|V(F)|}.
// Variable ids follow complete_edge_index. Requires n <= 12 and |E(F)| <= 4
// (CapacityError beyond).
Polynomial motif_polynomial(const Motif& motif, int n);

}  // namespace occsim
