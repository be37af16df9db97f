#pragma once

#include <memory>
#include <string>
#include <vector>

#include "apw/features.hpp"

namespace apw {

// Reputation scores live in [0,10]; 10 is most untrustworthy.
inline constexpr double kScoreMin = 0.0;
inline constexpr double kScoreMax = 10.0;

// Fail-closed default: clients we know nothing about score worst.
inline constexpr double kDefaultUnknownClientScore = 10.0;

// Reference scorer: nearest-neighbor euclidean distance to the corpus in the
// min-max normalized unit cube, mapped linearly so that distance 0 scores 10
// and the cube diameter sqrt(k) scores 0. Throws DimensionMismatch.
double score_euclidean(const FeatureVector& v, const MaliciousCorpus& corpus);

// Pluggable scoring contract. Implementations are immutable after
// construction and safe to share across request handlers.
class Scorer {
public:
  virtual ~Scorer() = default;

  // Total: unknown clients receive the configured default score.
  virtual double score(const std::string& client_ip) const = 0;
};

class EuclideanScorer final : public Scorer {
public:
  EuclideanScorer(MaliciousCorpus corpus, FeatureTable features,
                  double unknown_client_score = kDefaultUnknownClientScore);

  double score(const std::string& client_ip) const override;

private:
  MaliciousCorpus corpus_;
  FeatureTable features_;
  double unknown_client_score_;
};

class FixtureScorer final : public Scorer {
public:
  explicit FixtureScorer(ScoreTable scores,
                         double unknown_client_score = kDefaultUnknownClientScore);

  double score(const std::string& client_ip) const override;

private:
  ScoreTable scores_;
  double unknown_client_score_;
};

}  // namespace apw
