#include "culp/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace culp {

namespace {

void check_dims(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw std::invalid_argument("similarity: dimension mismatch");
}

}  // namespace

double distance(DistanceKind kind, std::span<const double> u, std::span<const double> v) {
    check_dims(u, v);
    double acc = 0.0;
    if (kind == DistanceKind::Euclidean) {
        for (std::size_t f = 0; f < u.size(); ++f) {
            double d = u[f] - v[f];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    for (std::size_t f = 0; f < u.size(); ++f) acc += std::abs(u[f] - v[f]);
    return acc;
}

double similarity(const SimilarityConfig& cfg, std::span<const double> u,
                  std::span<const double> v) {
    check_dims(u, v);
    switch (cfg.kind) {
        case SimilarityKind::Cosine: {
            double dot = 0.0, nu = 0.0, nv = 0.0;
            for (std::size_t f = 0; f < u.size(); ++f) {
                dot += u[f] * v[f];
                nu += u[f] * u[f];
                nv += v[f] * v[f];
            }
            if (nu == 0.0 || nv == 0.0)
                throw std::invalid_argument("cosine similarity: zero vector");
            return dot / (std::sqrt(nu) * std::sqrt(nv));
        }
        case SimilarityKind::InverseEuclidean:
            return 1.0 / (distance(DistanceKind::Euclidean, u, v) + cfg.epsilon);
        case SimilarityKind::InverseManhattan:
            return 1.0 / (distance(DistanceKind::Manhattan, u, v) + cfg.epsilon);
    }
    throw std::logic_error("similarity: unknown kind");
}

SimilarityKind parse_similarity(const std::string& name) {
    if (name == "cosine") return SimilarityKind::Cosine;
    if (name == "inv-euclidean") return SimilarityKind::InverseEuclidean;
    if (name == "inv-manhattan") return SimilarityKind::InverseManhattan;
    throw std::invalid_argument("unknown similarity kind: " + name);
}

std::string to_string(SimilarityKind kind) {
    switch (kind) {
        case SimilarityKind::Cosine: return "cosine";
        case SimilarityKind::InverseEuclidean: return "inv-euclidean";
        case SimilarityKind::InverseManhattan: return "inv-manhattan";
    }
    return "?";
}

}  // namespace culp
