#include "occsim/observables.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "occsim/errors.hpp"

namespace occsim {

Polynomial::Builder::Builder(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 1) throw ArgumentError("polynomial needs at least one variable");
    if (degree < 1) throw ArgumentError("polynomial degree must be at least 1");
    if (degree > nvars) throw ArgumentError("polynomial degree exceeds variable count");
}

Polynomial::Builder& Polynomial::Builder::add(std::span<const int> vertices, double coeff) {
    if (static_cast<int>(vertices.size()) != degree_)
        throw ArgumentError("term arity does not match polynomial degree");
    std::vector<int> key(vertices.begin(), vertices.end());
    std::sort(key.begin(), key.end());
    for (size_t i = 0; i < key.size(); ++i) {
        if (key[i] < 0 || key[i] >= nvars_) throw ArgumentError("term vertex out of range");
        if (i > 0 && key[i] == key[i - 1])
            throw ArgumentError("term vertices must be distinct");
    }
    terms_[std::move(key)] += coeff;
    return *this;
}

Polynomial Polynomial::Builder::build() {
    Polynomial p;
    p.nvars_ = nvars_;
    p.degree_ = degree_;
    p.vertex_mass_.assign(nvars_, 0.0);
    for (const auto& [vertices, coeff] : terms_) {
        if (coeff == 0.0) continue;
        p.term_vertices_.push_back(vertices);
        p.coeffs_.push_back(coeff);
        for (int v : vertices) p.vertex_mass_[v] += std::fabs(coeff);
    }
    double sum = 0.0, sum_sq = 0.0;
    for (double c : p.vertex_mass_) {
        sum += c;
        sum_sq += c * c;
    }
    p.norm_l1_ = sum;
    p.norm_l2_ = std::sqrt(sum_sq);
    return p;
}

double Polynomial::vertex_mass(int v) const {
    if (v < 0 || v >= nvars_) throw ArgumentError("vertex out of range");
    return vertex_mass_[v];
}

double Polynomial::evaluate(const StateVector& s) const {
    if (s.size() != nvars_) throw ArgumentError("state length does not match polynomial");
    double total = 0.0;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        bool all_on = true;
        for (int v : term_vertices_[i])
            if (!s.get(v)) {
                all_on = false;
                break;
            }
        if (all_on) total += coeffs_[i];
    }
    return total;
}

double Polynomial::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw ArgumentError("state length does not match polynomial");
    double total = 0.0;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        double prod = coeffs_[i];
        for (int v : term_vertices_[i]) {
            prod *= x[v];
            if (prod == 0.0) break;
        }
        total += prod;
    }
    return total;
}

std::string Polynomial::to_text() const {
    std::string out;
    char buf[32];
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", coeffs_[i]);
        out += buf;
        for (int v : term_vertices_[i]) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

Polynomial Polynomial::from_text(std::string_view text, int nvars, int degree) {
    Builder builder(nvars, degree);
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        // Tokenize on blanks.
        std::vector<std::string_view> tokens;
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            if (i > start) tokens.push_back(line.substr(start, i - start));
        }
        if (tokens.empty()) continue;
        if (static_cast<int>(tokens.size()) != degree + 1)
            throw ParseError("expected 'coeff v1 .. vd'", line_no);
        double coeff = 0.0;
        auto [cp, cec] = std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), coeff);
        if (cec != std::errc() || cp != tokens[0].data() + tokens[0].size())
            throw ParseError("could not parse coefficient", line_no);
        std::vector<int> vertices;
        for (int k = 1; k <= degree; ++k) {
            int v = 0;
            auto [vp, vec] = std::from_chars(tokens[k].data(), tokens[k].data() + tokens[k].size(), v);
            if (vec != std::errc() || vp != tokens[k].data() + tokens[k].size())
                throw ParseError("could not parse term vertex", line_no);
            vertices.push_back(v);
        }
        builder.add(vertices, coeff);
    }
    return builder.build();
}

Polynomial neighborhood_polynomial(const Graph& g, int v) {
    g.check_vertex(v);
    int d = g.degree(v);
    if (d == 0) throw ValidationError("vertex " + std::to_string(v) + " has no neighbors");
    Polynomial::Builder builder(g.vertex_count(), 1);
    double coeff = 1.0 / d;
    for (int w : g.neighbors(v)) {
        int vs[1] = {w};
        builder.add(vs, coeff);
    }
    return builder.build();
}

bool check_membership(const Polynomial& p, double lambda, double rho) {
    if (!(lambda >= 0.0) || !(rho >= 0.0))
        throw ArgumentError("membership thresholds must be non-negative");
    return p.norm_l1() <= lambda && p.norm_l2() <= rho;
}

namespace {

// Exact automorphism count of a tiny graph by checking every permutation.
long count_automorphisms(const Graph& g) {
    int k = g.vertex_count();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    auto edges = g.edges();
    long count = 0;
    do {
        bool ok = true;
        for (auto [u, v] : edges)
            if (!g.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

}  // namespace

Motif::Motif(std::string name, Graph shape) : name_(std::move(name)), shape_(std::move(shape)) {
    if (shape_.vertex_count() < 2 || shape_.vertex_count() > 5)
        throw ArgumentError("motif must have between 2 and 5 vertices");
    if (shape_.min_degree() < 1) throw ArgumentError("motif must not have isolated vertices");
    aut_ = count_automorphisms(shape_);
}

Motif Motif::by_name(std::string_view name) {
    auto build = [](int n, std::vector<std::pair<int, int>> edges) {
        return Graph::from_edges(n, edges);
    };
    if (name == "edge") return Motif("edge", build(2, {{0, 1}}));
    if (name == "wedge") return Motif("wedge", build(3, {{0, 1}, {1, 2}}));
    if (name == "triangle") return Motif("triangle", build(3, {{0, 1}, {1, 2}, {0, 2}}));
    if (name == "p3") return Motif("p3", build(4, {{0, 1}, {1, 2}, {2, 3}}));
    if (name == "c4") return Motif("c4", build(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    if (name == "k4")
        return Motif("k4", build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
    throw ArgumentError("unknown motif '" + std::string(name) + "'");
}

const std::vector<std::string>& Motif::names() {
    static const std::vector<std::string> kNames = {"edge", "wedge", "triangle",
                                                    "p3",   "c4",    "k4"};
    return kNames;
}

EdgeState::EdgeState(int host_n) : n(host_n) {
    if (host_n < 2) throw ArgumentError("edge state needs at least two host vertices");
    w.assign(static_cast<size_t>(n) * n, 0.0);
}

void EdgeState::set(int j, int k, double value) {
    if (j < 0 || j >= n || k < 0 || k >= n || j == k)
        throw ArgumentError("edge state index out of range");
    w[static_cast<size_t>(j) * n + k] = value;
    w[static_cast<size_t>(k) * n + j] = value;
}

EdgeState EdgeState::from_line_graph_state(int host_n,
                                           const std::vector<std::pair<int, int>>& vertex_edges,
                                           const StateVector& s) {
    if (static_cast<int>(vertex_edges.size()) != s.size())
        throw ArgumentError("line-graph state length does not match edge map");
    EdgeState es(host_n);
    for (size_t i = 0; i < vertex_edges.size(); ++i)
        es.set(vertex_edges[i].first, vertex_edges[i].second,
               s.get(static_cast<int>(i)) ? 1.0 : 0.0);
    return es;
}

EdgeState EdgeState::from_line_graph_state(int host_n,
                                           const std::vector<std::pair<int, int>>& vertex_edges,
                                           std::span<const double> x) {
    if (vertex_edges.size() != x.size())
        throw ArgumentError("line-graph state length does not match edge map");
    EdgeState es(host_n);
    for (size_t i = 0; i < vertex_edges.size(); ++i)
        es.set(vertex_edges[i].first, vertex_edges[i].second, x[i]);
    return es;
}

namespace {

// Average of the edge-weight product over all n^k vertex maps, by recursion
// over the motif vertices with early exit on zero partial products.
double enumerate_density(const Motif& motif, const EdgeState& state) {
    int k = motif.vertex_count();
    int n = state.n;
    // Edges from each motif vertex to earlier-placed ones.
    std::vector<std::vector<int>> back_edges(k);
    for (auto [a, b] : motif.shape().edges()) back_edges[std::max(a, b)].push_back(std::min(a, b));

    std::vector<int> image(k, 0);
    double total = 0.0;
    // Iterative depth-first walk over assignments.
    std::vector<double> partial(k + 1, 1.0);
    int depth = 0;
    image[0] = -1;
    while (depth >= 0) {
        if (++image[depth] >= n) {
            --depth;
            continue;
        }
        double prod = partial[depth];
        for (int prev : back_edges[depth]) {
            prod *= state.at(image[prev], image[depth]);
            if (prod == 0.0) break;
        }
        if (prod == 0.0) continue;
        if (depth == k - 1) {
            total += prod;
            continue;
        }
        partial[depth + 1] = prod;
        ++depth;
        image[depth] = -1;
    }
    double scale = 1.0;
    for (int i = 0; i < k; ++i) scale *= n;
    return total / scale;
}

double closed_form_density(const Motif& motif, const EdgeState& state) {
    int n = state.n;
    double nn = static_cast<double>(n);
    if (motif.name() == "edge") {
        double sum = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) sum += state.at(j, k);
        return sum / (nn * nn);
    }
    if (motif.name() == "wedge") {
        double sum = 0.0;
        for (int b = 0; b < n; ++b) {
            double row = 0.0;
            for (int a = 0; a < n; ++a) row += state.at(b, a);
            sum += row * row;
        }
        return sum / (nn * nn * nn);
    }
    if (motif.name() == "triangle") {
        // trace(W^3) via one explicit product: sum_{i,j} (W^2)_{ij} W_{ji}.
        std::vector<double> w2(static_cast<size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double wik = state.at(i, k);
                if (wik == 0.0) continue;
                const double* row_k = state.w.data() + static_cast<size_t>(k) * n;
                double* row_i = w2.data() + static_cast<size_t>(i) * n;
                for (int j = 0; j < n; ++j) row_i[j] += wik * row_k[j];
            }
        double trace = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) trace += w2[static_cast<size_t>(i) * n + j] * state.at(j, i);
        return trace / (nn * nn * nn);
    }
    throw CapacityError("motif '" + motif.name() + "' exceeds the enumeration budget and has no closed form");
}

}  // namespace

double homomorphism_density(const Motif& motif, const EdgeState& state, DensityMethod method) {
    double maps = std::pow(static_cast<double>(state.n), motif.vertex_count());
    switch (method) {
        case DensityMethod::kEnumerate:
            if (maps > 1e7) throw CapacityError("map enumeration budget exceeded");
            return enumerate_density(motif, state);
        case DensityMethod::kClosedForm:
            return closed_form_density(motif, state);
        case DensityMethod::kAuto:
            if (maps <= 1e7) return enumerate_density(motif, state);
            return closed_form_density(motif, state);
    }
    throw ArgumentError("unknown density method");
}

namespace {

// Does this edge set (over host vertices) induce a graph isomorphic to the
// motif? The candidate's vertex set is exactly the endpoints of its edges.
bool induces_motif(const Motif& motif, const std::vector<std::pair<int, int>>& candidate) {
    std::vector<int> verts;
    for (auto [u, v] : candidate) {
        verts.push_back(u);
        verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    int k = motif.vertex_count();
    if (static_cast<int>(verts.size()) != k) return false;

    // Local adjacency of the candidate over its own vertex indices.
    auto local = [&](int host) {
        return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), host) - verts.begin());
    };
    std::vector<std::pair<int, int>> local_edges;
    for (auto [u, v] : candidate) {
        int a = local(u), b = local(v);
        local_edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(local_edges.begin(), local_edges.end());

    // Degree multiset quick reject.
    std::vector<int> cand_deg(k, 0), motif_deg(k, 0);
    for (auto [a, b] : local_edges) {
        ++cand_deg[a];
        ++cand_deg[b];
    }
    for (int v = 0; v < k; ++v) motif_deg[v] = motif.shape().degree(v);
    auto cd = cand_deg, md = motif_deg;
    std::sort(cd.begin(), cd.end());
    std::sort(md.begin(), md.end());
    if (cd != md) return false;

    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    auto motif_edges = motif.shape().edges();
    do {
        std::vector<std::pair<int, int>> mapped;
        mapped.reserve(motif_edges.size());
        for (auto [u, v] : motif_edges) {
            int a = perm[u], b = perm[v];
            mapped.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(mapped.begin(), mapped.end());
        if (mapped == local_edges) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

Polynomial motif_polynomial(const Motif& motif, int n) {
    if (n < 2) throw ArgumentError("motif polynomial needs host n >= 2");
    if (n > 12) throw CapacityError("motif polynomial capped at host n = 12");
    int m = motif.edge_count();
    if (m > 4) throw CapacityError("motif polynomial capped at 4 motif edges");

    // All host edges in canonical order; variable i is host edge host_edges[i].
    std::vector<std::pair<int, int>> host_edges;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) host_edges.emplace_back(j, k);
    int e = static_cast<int>(host_edges.size());

    double coeff = static_cast<double>(motif.automorphism_count());
    for (int i = 0; i < motif.vertex_count(); ++i) coeff /= n;

    Polynomial::Builder builder(e, m);
    if (m > e) return builder.build();

    // Walk all m-element subsets of host edges in lexicographic order.
    std::vector<int> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<std::pair<int, int>> candidate(m);
    while (true) {
        for (int i = 0; i < m; ++i) candidate[i] = host_edges[pick[i]];
        if (induces_motif(motif, candidate)) builder.add(pick, coeff);
        int i = m - 1;
        while (i >= 0 && pick[i] == e - m + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
    return builder.build();
}

}  // namespace occsim
