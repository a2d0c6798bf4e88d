// Static analysis of a generator matrix: minimum distance, column norms,
// dependency graph and its exact chromatic number.
#pragma once

#include <cstdint>
#include <vector>

#include "nfvsim/generator_matrix.hpp"

namespace nfvsim {

// Undirected graph on the N servers. Edge (i, j) is present when columns i
// and j share a nonzero entry in some row, i.e. their noise terms overlap.
struct DependencyGraph {
    int vertex_count = 0;
    std::vector<std::uint32_t> adj;  // adjacency bitmask per vertex

    bool adjacent(int i, int j) const { return (adj[i] >> j) & 1u; }
    int degree(int i) const;
    int edge_count() const;
};

struct CodeMetrics {
    int d_min = 0;
    int chromatic = 0;
    std::vector<long long> sq_norms;  // per-column squared norms, exact integers
};

// Exact minimum Hamming weight over all nonzero codewords m * G mod p'.
// Guard: K * log2(p') <= 24; beyond that throws SizeError (no approximation).
int min_distance(const GeneratorMatrix& code);

DependencyGraph dependency_graph(const GeneratorMatrix& code);

DependencyGraph induced_subgraph(const DependencyGraph& graph, std::span<const int> vertices);

// Exact chromatic number by branch-and-bound over a degree-sorted vertex
// order. Guard: vertex_count <= 24.
int chromatic_number(const DependencyGraph& graph);

// Integer squared norms of the natural-map column values (not reduced mod p').
std::vector<long long> column_sq_norms(const GeneratorMatrix& code);

CodeMetrics analyze_code(const GeneratorMatrix& code);

}  // namespace nfvsim
