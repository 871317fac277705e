#pragma once

#include <span>
#include <string>

namespace culp {

enum class DistanceKind { Euclidean, Manhattan };

enum class SimilarityKind { Cosine, InverseEuclidean, InverseManhattan };

struct SimilarityConfig {
    SimilarityKind kind = SimilarityKind::InverseEuclidean;
    double epsilon = 1e-6;  // keeps the inverse forms finite at zero distance
};

double distance(DistanceKind kind, std::span<const double> u, std::span<const double> v);

// Cosine is undefined for a zero vector and throws; the inverse forms are
// 1/(distance + epsilon), always positive.
double similarity(const SimilarityConfig& cfg, std::span<const double> u,
                  std::span<const double> v);

// CLI/config names: "cosine", "inv-euclidean", "inv-manhattan".
SimilarityKind parse_similarity(const std::string& name);
std::string to_string(SimilarityKind kind);

}  // namespace culp
