#include "culp/linkpred.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace culp {

PredictorKind parse_predictor(const std::string& name) {
    if (name == "cn") return PredictorKind::CN;
    if (name == "aa") return PredictorKind::AA;
    if (name == "ra") return PredictorKind::RA;
    if (name == "cs") return PredictorKind::CS;
    throw std::invalid_argument("unknown predictor: " + name);
}

std::string to_string(PredictorKind kind) {
    switch (kind) {
        case PredictorKind::CN: return "cn";
        case PredictorKind::AA: return "aa";
        case PredictorKind::RA: return "ra";
        case PredictorKind::CS: return "cs";
    }
    return "?";
}

namespace {

void check_pair(const AdjacencyList& adj, int i, int j) {
    const int max_id = static_cast<int>(adj.size()) - 1;
    if (i < 1 || i > max_id || j < 1 || j > max_id)
        throw std::invalid_argument("link score: invalid node id");
    if (i == j) throw std::invalid_argument("link score: i == j");
}

// Walks two sorted neighbor sets in lockstep; O(min) would need galloping,
// the linear merge is plenty for the degrees involved.
template <typename F>
void for_common(const std::vector<int>& a, const std::vector<int>& b, F&& f) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { f(*ia); ++ia; ++ib; }
    }
}

std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t c = 0;
    for_common(a, b, [&](int) { ++c; });
    return c;
}

}  // namespace

double cn_score(const AdjacencyList& adj, int i, int j) {
    check_pair(adj, i, j);
    return static_cast<double>(intersection_size(adj[i], adj[j]));
}

double aa_score(const AdjacencyList& adj, int i, int j) {
    check_pair(adj, i, j);
    double s = 0.0;
    for_common(adj[i], adj[j], [&](int g) {
        auto deg = adj[g].size();
        if (deg < 2) throw std::logic_error("aa_score: degree-1 common neighbor");
        s += 1.0 / std::log(static_cast<double>(deg));
    });
    return s;
}

double ra_score(const AdjacencyList& adj, int i, int j) {
    check_pair(adj, i, j);
    double s = 0.0;
    for_common(adj[i], adj[j], [&](int g) { s += 1.0 / static_cast<double>(adj[g].size()); });
    return s;
}

int incompatibility(const AdjacencyList& adj, int i, int j, int gamma) {
    check_pair(adj, i, j);
    if (!std::binary_search(adj[i].begin(), adj[i].end(), gamma) ||
        !std::binary_search(adj[j].begin(), adj[j].end(), gamma))
        throw std::invalid_argument("incompatibility: gamma is not a common neighbor");
    return static_cast<int>(adj[gamma].size() - intersection_size(adj[gamma], adj[j]));
}

double cs_score(const AdjacencyList& adj, int i, int j) {
    check_pair(adj, i, j);
    double s = 0.0;
    for_common(adj[i], adj[j], [&](int g) {
        double dij = static_cast<double>(adj[g].size() - intersection_size(adj[g], adj[j]));
        double dji = static_cast<double>(adj[g].size() - intersection_size(adj[g], adj[i]));
        s += 1.0 / dij + 1.0 / dji;
    });
    return s;
}

double link_score(PredictorKind kind, const AdjacencyList& adj, int i, int j) {
    switch (kind) {
        case PredictorKind::CN: return cn_score(adj, i, j);
        case PredictorKind::AA: return aa_score(adj, i, j);
        case PredictorKind::RA: return ra_score(adj, i, j);
        case PredictorKind::CS: return cs_score(adj, i, j);
    }
    throw std::logic_error("link_score: unknown predictor");
}

}  // namespace culp
