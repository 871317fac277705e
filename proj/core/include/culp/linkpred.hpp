#pragma once

#include <string>
#include <vector>

#include "culp/leg.hpp"

namespace culp {

enum class PredictorKind { CN, AA, RA, CS };

// CLI/config names: "cn", "aa", "ra", "cs".
PredictorKind parse_predictor(const std::string& name);
std::string to_string(PredictorKind kind);

// Local link-prediction scores over a simple undirected graph given as
// sorted 1-based adjacency lists. All scores are symmetric in (i, j).

// |common neighbors|
double cn_score(const AdjacencyList& adj, int i, int j);

// sum over common neighbors g of 1/ln(deg(g))
double aa_score(const AdjacencyList& adj, int i, int j);

// sum over common neighbors g of 1/deg(g)
double ra_score(const AdjacencyList& adj, int i, int j);

// Incompatibility penalty: the count of gamma's neighbors not adjacent to j.
// Requires gamma to be a common neighbor of i and j; always >= 1 when the
// edge (i,j) is absent.
int incompatibility(const AdjacencyList& adj, int i, int j, int gamma);

// sum over common neighbors g of 1/delta(i,j,g) + 1/delta(j,i,g)
double cs_score(const AdjacencyList& adj, int i, int j);

double link_score(PredictorKind kind, const AdjacencyList& adj, int i, int j);

}  // namespace culp
