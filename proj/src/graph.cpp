#include "occsim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <limits>

#include "occsim/errors.hpp"
#include "occsim/rng.hpp"

namespace occsim {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw ArgumentError("vertex count must be non-negative");
    std::vector<std::pair<int, int>> norm;
    norm.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ValidationError("edge endpoint out of range: " + std::to_string(u) + " " +
                                  std::to_string(v));
        if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
        norm.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(norm.begin(), norm.end());
    norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

    Graph g;
    std::vector<int> deg(n, 0);
    for (auto [u, v] : norm) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : norm) {
        g.neighbors_[cursor[u]++] = v;
        g.neighbors_[cursor[v]++] = u;
    }
    // Sorted input pairs fill each neighbor run ascending already for the
    // first endpoint, but not for the second; sort per vertex to be safe.
    for (int v = 0; v < n; ++v)
        std::sort(g.neighbors_.begin() + g.offsets_[v], g.neighbors_.begin() + g.offsets_[v + 1]);
    g.min_degree_ = n == 0 ? 0 : *std::min_element(deg.begin(), deg.end());
    return g;
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
        throw ArgumentError("vertex " + std::to_string(v) + " out of range");
}

Graph complete_graph(int n) {
    if (n < 2) throw ArgumentError("complete graph needs n >= 2");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph cycle_graph(int n) {
    if (n < 3) throw ArgumentError("cycle graph needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n);
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph::from_edges(n, edges);
}

Graph cycle_power_graph(int n, int k) {
    if (k < 1) throw ArgumentError("cycle power needs k >= 1");
    if (2 * k + 1 > n) throw ArgumentError("cycle power needs 2k + 1 <= n");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(n) * k);
    for (int v = 0; v < n; ++v)
        for (int d = 1; d <= k; ++d) edges.emplace_back(v, (v + d) % n);
    return Graph::from_edges(n, edges);
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 0) throw ArgumentError("vertex count must be non-negative");
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("edge probability must lie in [0,1]");
    if (n > 20000) throw CapacityError("random graph sampling capped at 20000 vertices");
    RngStream rng(seed, RngStream::kGraphStream);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_bernoulli(p)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

LineGraphResult line_graph(const Graph& g) {
    auto base_edges = g.edges();
    if (base_edges.empty()) throw ValidationError("line graph of an edgeless graph is undefined");
    int n = g.vertex_count();
    std::vector<std::vector<int>> incident(n);
    for (int i = 0; i < static_cast<int>(base_edges.size()); ++i) {
        incident[base_edges[i].first].push_back(i);
        incident[base_edges[i].second].push_back(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        const auto& inc = incident[v];
        for (size_t a = 0; a < inc.size(); ++a)
            for (size_t b = a + 1; b < inc.size(); ++b) edges.emplace_back(inc[a], inc[b]);
    }
    LineGraphResult out;
    out.graph = Graph::from_edges(static_cast<int>(base_edges.size()), edges);
    out.vertex_edges = std::move(base_edges);
    return out;
}

int complete_edge_index(int n, int j, int k) {
    if (j == k) throw ArgumentError("edge index needs distinct endpoints");
    if (j > k) std::swap(j, k);
    if (j < 0 || k >= n) throw ArgumentError("edge endpoint out of range");
    return j * n - j * (j + 1) / 2 + (k - j - 1);
}

namespace {

// Splits text into lines, keeping track of 1-based numbering; blank lines are
// reported as empty token lists.
std::vector<std::string_view> line_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

int parse_index(std::string_view token, int line_no) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError("expected a decimal vertex index, got '" + std::string(token) + "'",
                         line_no);
    if (value < 0) throw ParseError("vertex index must be non-negative", line_no);
    return value;
}

}  // namespace

Graph load_edge_list(std::string_view text) {
    std::vector<std::pair<int, int>> edges;
    int declared_n = -1;
    int max_index = -1;
    int line_no = 0;
    size_t pos = 0;
    bool saw_content = false;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        auto tokens = line_tokens(line);
        if (tokens.empty()) continue;
        if (!saw_content && tokens[0] == "n") {
            if (tokens.size() != 2) throw ParseError("header must read 'n <count>'", line_no);
            declared_n = parse_index(tokens[1], line_no);
            saw_content = true;
            continue;
        }
        saw_content = true;
        if (tokens.size() != 2)
            throw ParseError("expected two endpoints per edge line", line_no);
        int u = parse_index(tokens[0], line_no);
        int v = parse_index(tokens[1], line_no);
        if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), line_no);
        if (declared_n >= 0 && (u >= declared_n || v >= declared_n))
            throw ParseError("endpoint exceeds declared vertex count", line_no);
        edges.emplace_back(u, v);
        max_index = std::max({max_index, u, v});
    }
    int n = declared_n >= 0 ? declared_n : max_index + 1;
    return Graph::from_edges(n, edges);
}

std::string serialize_edge_list(const Graph& g) {
    std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

WalkDistribution walk_distribution(const Graph& g, int source, int max_steps) {
    g.check_vertex(source);
    if (max_steps < 0) throw ArgumentError("walk length must be non-negative");
    int n = g.vertex_count();
    WalkDistribution wd;
    wd.source = source;
    wd.rows.reserve(max_steps + 1);
    std::vector<double> row(n, 0.0);
    row[source] = 1.0;
    wd.rows.push_back(row);
    for (int s = 1; s <= max_steps; ++s) {
        std::vector<double> next(n, 0.0);
        for (int u = 0; u < n; ++u) {
            if (row[u] == 0.0) continue;
            int d = g.degree(u);
            if (d == 0)
                throw ValidationError("walk reaches isolated vertex " + std::to_string(u));
            double share = row[u] / d;
            for (int w : g.neighbors(u)) next[w] += share;
        }
        row = std::move(next);
        wd.rows.push_back(row);
    }
    return wd;
}

}  // namespace occsim
