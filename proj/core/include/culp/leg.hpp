#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "culp/dataset.hpp"
#include "culp/similarity.hpp"

namespace culp {

// Node ids are 1-based: labeled nodes 1..n, unlabeled n+1..n+m,
// class nodes n+m+1..n+m+C. Slot 0 of adjacency vectors is unused.
using AdjacencyList = std::vector<std::vector<int>>;

using EdgeList = std::vector<std::pair<int, int>>;  // (u, v) with u < v

// Undirected kNN conversion: edge (i,j) iff i is in the k nearest of j or
// vice versa. Ties broken by ascending node id. Returns Nk/2..Nk edges.
EdgeList knn_convert(const DataMatrix& X, const SimilarityConfig& sim, int k);

// Edge (i,j) iff similarity(i,j) > r.
EdgeList rradius_convert(const DataMatrix& X, const SimilarityConfig& sim, double r);

enum class EdgeKind { Similarity, Membership };

/// Label Embedded Graph: data nodes joined by kNN similarity edges plus one
/// node per class tied to its labeled instances by membership edges.
class Leg {
public:
    Leg() = default;

    int labeled_count() const { return n_; }
    int unlabeled_count() const { return m_; }
    int class_count() const { return C_; }
    int node_count() const { return n_ + m_ + C_; }
    int k() const { return k_; }
    const SimilarityConfig& sim() const { return sim_; }

    bool is_labeled(int v) const { return v >= 1 && v <= n_; }
    bool is_unlabeled(int v) const { return v > n_ && v <= n_ + m_; }
    bool is_class(int v) const { return v > n_ + m_ && v <= node_count(); }

    int class_node(int label) const { return n_ + m_ + label; }
    int label_of_class_node(int v) const { return v - n_ - m_; }

    const AdjacencyList& adjacency() const { return adj_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    EdgeKind edge_kind(int u, int v) const;

    std::size_t edge_count() const { return edge_count_; }
    std::size_t similarity_edge_count() const { return edge_count_ - n_; }

    bool has_features() const { return X_.rows > 0; }
    const DataMatrix& features() const { return X_; }  // rows 0..n+m-1 for node ids 1..n+m
    const std::vector<int>& labels() const { return y_; }

    // Adds one unlabeled node with the undirected kNN rule: the node links to
    // its own k nearest data nodes plus any existing node whose k-nearest set
    // it enters. Class node ids shift up by one. Returns the new node's id.
    std::pair<Leg, int> insert_unlabeled(std::span<const double> x_new) const;

    // Throws std::runtime_error when the edge count leaves
    // [n + k/2*(n+m), n + k*(n+m)] for the given conversion parameter.
    void check_edge_bounds(int k) const;

    // Edge-list text format with a 3-line header (n, m, C) and one
    // "u v kind" line per edge, kind S or C. Features are not serialized.
    void dump(std::ostream& os) const;
    static Leg load(std::istream& is);

    friend Leg build_leg(const DataMatrix& X_l, const DataMatrix& X_u,
                         const LabelVector& y, const SimilarityConfig& sim, int k);

private:
    void rebuild_adjacency();
    void validate() const;

    int n_ = 0, m_ = 0, C_ = 0, k_ = 0;
    SimilarityConfig sim_;
    AdjacencyList adj_;                   // sorted neighbor sets, 1-based
    std::vector<std::vector<int>> knn_;   // directed k-nearest lists per data node
    std::size_t edge_count_ = 0;
    DataMatrix X_;                        // concatenated labeled+unlabeled features
    std::vector<int> y_;                  // labels of nodes 1..n
};

// Builds the LEG over the concatenation of labeled and unlabeled rows.
// Throws on dimension mismatch or k outside 1..n+m-1.
Leg build_leg(const DataMatrix& X_l, const DataMatrix& X_u, const LabelVector& y,
              const SimilarityConfig& sim, int k);

}  // namespace culp
