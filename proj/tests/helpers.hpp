#pragma once

// Shared generators and brute-force reference implementations for the tests.
// The reference code is deliberately naive (linear scans, full sorts) so it
// shares no logic with the library under test.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "culp/dataset.hpp"
#include "culp/leg.hpp"
#include "culp/similarity.hpp"

namespace testutil {

using culp::AdjacencyList;
using culp::DataMatrix;
using culp::EdgeList;
using culp::LabelVector;
using culp::SimilarityConfig;

// Erdos-Renyi style graph, 1-based ids, simple and symmetric.
inline AdjacencyList random_graph(int n, double p, std::mt19937_64& rng) {
    AdjacencyList adj(static_cast<std::size_t>(n) + 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (coin(rng) < p) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;  // insertion order is already ascending
}

inline bool has_edge(const AdjacencyList& adj, int u, int v) {
    for (int w : adj[u])
        if (w == v) return true;
    return false;
}

inline std::vector<int> brute_common(const AdjacencyList& adj, int i, int j) {
    std::vector<int> out;
    for (int g = 1; g < static_cast<int>(adj.size()); ++g)
        if (g != i && g != j && has_edge(adj, i, g) && has_edge(adj, j, g))
            out.push_back(g);
    return out;
}

inline double brute_cn(const AdjacencyList& adj, int i, int j) {
    return static_cast<double>(brute_common(adj, i, j).size());
}

inline double brute_aa(const AdjacencyList& adj, int i, int j) {
    double s = 0.0;
    for (int g : brute_common(adj, i, j))
        s += 1.0 / std::log(static_cast<double>(adj[g].size()));
    return s;
}

inline double brute_ra(const AdjacencyList& adj, int i, int j) {
    double s = 0.0;
    for (int g : brute_common(adj, i, j)) s += 1.0 / static_cast<double>(adj[g].size());
    return s;
}

inline int brute_delta(const AdjacencyList& adj, int j, int gamma) {
    // neighbors of gamma that are not also neighbors of j
    int count = 0;
    for (int w : adj[gamma])
        if (!has_edge(adj, j, w)) ++count;
    return count;
}

inline double brute_cs(const AdjacencyList& adj, int i, int j) {
    double s = 0.0;
    for (int g : brute_common(adj, i, j))
        s += 1.0 / brute_delta(adj, j, g) + 1.0 / brute_delta(adj, i, g);
    return s;
}

// Undirected kNN edge set via full sorts, ties by ascending id.
inline std::set<std::pair<int, int>> brute_knn_edges(const DataMatrix& X,
                                                     const SimilarityConfig& sim, int k) {
    const int n = static_cast<int>(X.rows);
    std::set<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i) {
        std::vector<std::pair<double, int>> cand;
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            cand.push_back({culp::similarity(sim, X.row(i - 1), X.row(j - 1)), j});
        }
        std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (int t = 0; t < k && t < static_cast<int>(cand.size()); ++t) {
            int j = cand[t].second;
            edges.insert({std::min(i, j), std::max(i, j)});
        }
    }
    return edges;
}

inline std::set<std::pair<int, int>> edge_set(const AdjacencyList& adj) {
    std::set<std::pair<int, int>> edges;
    for (int u = 1; u < static_cast<int>(adj.size()); ++u)
        for (int v : adj[u])
            if (u < v) edges.insert({u, v});
    return edges;
}

// Well separated gaussian blobs, one per class, labels 1..C.
inline std::pair<DataMatrix, LabelVector> make_blobs(int per_class, int C, int dims,
                                                     double spread,
                                                     std::mt19937_64& rng) {
    DataMatrix X;
    LabelVector y;
    y.class_count = C;
    std::normal_distribution<double> noise(0.0, spread);
    for (int c = 1; c <= C; ++c)
        for (int i = 0; i < per_class; ++i) {
            std::vector<double> row(static_cast<std::size_t>(dims));
            for (int d = 0; d < dims; ++d)
                row[static_cast<std::size_t>(d)] = 10.0 * c + noise(rng);
            X.append_row(row);
            y.labels.push_back(c);
        }
    return {X, y};
}

inline DataMatrix random_matrix(int rows, int cols, std::mt19937_64& rng,
                                double lo = -5.0, double hi = 5.0) {
    DataMatrix X;
    std::uniform_real_distribution<double> u(lo, hi);
    for (int i = 0; i < rows; ++i) {
        std::vector<double> row(static_cast<std::size_t>(cols));
        for (auto& v : row) v = u(rng);
        X.append_row(row);
    }
    return X;
}

}  // namespace testutil
