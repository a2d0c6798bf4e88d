#include "nfvsim/code_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "nfvsim/errors.hpp"

namespace nfvsim {

int DependencyGraph::degree(int i) const { return std::popcount(adj[i]); }

int DependencyGraph::edge_count() const {
    int total = 0;
    for (const auto mask : adj) total += std::popcount(mask);
    return total / 2;
}

int min_distance(const GeneratorMatrix& code) {
    validate_generator_matrix(code);
    const int K = code.K, N = code.N, p = code.p_prime;
    if (K * std::log2(double(p)) > 24.0 + 1e-9)
        throw SizeError("code too large for exact d_min: K*log2(p') = " +
                        std::to_string(K * std::log2(double(p))) + " exceeds 24");

    // Odometer enumeration of all messages. Incrementing digit j by one
    // changes the codeword by +row_j mod p' (a wrap from p'-1 to 0 is the
    // same change, since -(p'-1) == 1 mod p'), so the codeword is maintained
    // incrementally along the carry chain.
    std::vector<int> digits(K, 0);
    std::vector<int> codeword(N, 0);
    int best = N + 1;
    const std::uint64_t total = [&] {
        std::uint64_t t = 1;
        for (int j = 0; j < K; ++j) t *= std::uint64_t(p);
        return t;
    }();
    for (std::uint64_t step = 1; step < total; ++step) {
        int j = 0;
        for (;;) {
            for (int c = 0; c < N; ++c) {
                int v = codeword[c] + code.at(j, c);
                codeword[c] = v >= p ? v - p : v;
            }
            if (digits[j] == p - 1) {
                digits[j] = 0;
                ++j;
            } else {
                ++digits[j];
                break;
            }
        }
        int weight = 0;
        for (int c = 0; c < N; ++c) weight += codeword[c] != 0;
        if (weight < best) {
            best = weight;
            if (best == 1) break;
        }
    }
    return best;
}

DependencyGraph dependency_graph(const GeneratorMatrix& code) {
    validate_generator_matrix(code, /*full_code=*/false);
    DependencyGraph g;
    g.vertex_count = code.N;
    g.adj.assign(code.N, 0);
    for (int r = 0; r < code.K; ++r) {
        std::uint32_t support = 0;
        for (int c = 0; c < code.N; ++c)
            if (code.at(r, c) != 0) support |= 1u << c;
        for (int c = 0; c < code.N; ++c)
            if (support & (1u << c)) g.adj[c] |= support & ~(1u << c);
    }
    return g;
}

DependencyGraph induced_subgraph(const DependencyGraph& graph, std::span<const int> vertices) {
    DependencyGraph g;
    g.vertex_count = int(vertices.size());
    g.adj.assign(g.vertex_count, 0);
    for (int i = 0; i < g.vertex_count; ++i)
        for (int j = i + 1; j < g.vertex_count; ++j)
            if (graph.adjacent(vertices[i], vertices[j])) {
                g.adj[i] |= 1u << j;
                g.adj[j] |= 1u << i;
            }
    return g;
}

namespace {

struct ColoringSearch {
    const std::vector<std::uint32_t>& adj;
    const std::vector<int>& order;
    std::vector<int> color;
    int best;

    void run(std::size_t pos, int used) {
        if (used >= best) return;  // cannot improve
        if (pos == order.size()) {
            best = used;
            return;
        }
        const int v = order[pos];
        const int cap = std::min(used + 1, best - 1);
        for (int c = 1; c <= cap; ++c) {
            bool ok = true;
            for (std::size_t j = 0; j < pos && ok; ++j)
                if (color[order[j]] == c && ((adj[v] >> order[j]) & 1u)) ok = false;
            if (!ok) continue;
            color[v] = c;
            run(pos + 1, std::max(used, c));
            color[v] = 0;
        }
    }
};

}  // namespace

int chromatic_number(const DependencyGraph& graph) {
    const int n = graph.vertex_count;
    if (n > 24) throw SizeError("graph too large for exact chromatic number: " +
                                std::to_string(n) + " vertices exceeds 24");
    if (n == 0) return 1;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return graph.degree(a) > graph.degree(b); });

    // Greedy upper bound on the same order seeds the branch and bound.
    std::vector<int> greedy(n, 0);
    int greedy_max = 0;
    for (int v : order) {
        std::uint32_t used = 0;
        for (int u = 0; u < n; ++u)
            if (graph.adjacent(v, u) && greedy[u] > 0) used |= 1u << (greedy[u] - 1);
        int c = 1;
        while (used & (1u << (c - 1))) ++c;
        greedy[v] = c;
        greedy_max = std::max(greedy_max, c);
    }

    ColoringSearch search{graph.adj, order, std::vector<int>(n, 0), greedy_max + 1};
    search.run(0, 0);
    return std::max(search.best, 1);
}

std::vector<long long> column_sq_norms(const GeneratorMatrix& code) {
    std::vector<long long> norms(code.N, 0);
    for (int c = 0; c < code.N; ++c)
        for (int r = 0; r < code.K; ++r)
            norms[c] += 1LL * code.at(r, c) * code.at(r, c);
    return norms;
}

CodeMetrics analyze_code(const GeneratorMatrix& code) {
    CodeMetrics m;
    m.d_min = min_distance(code);
    m.chromatic = chromatic_number(dependency_graph(code));
    m.sq_norms = column_sq_norms(code);
    return m;
}

}  // namespace nfvsim
