#include "apw/reputation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apw/errors.hpp"

namespace apw {

double score_euclidean(const FeatureVector& v, const MaliciousCorpus& corpus) {
  if (v.size() != corpus.dim()) throw DimensionMismatch(corpus.dim(), v.size());

  FeatureVector u = normalize(v, corpus);
  double best_sq = std::numeric_limits<double>::infinity();
  for (const auto& p : corpus.points) {
    FeatureVector q = normalize(p, corpus);
    double sq = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      double d = u[j] - q[j];
      sq += d * d;
    }
    best_sq = std::min(best_sq, sq);
  }

  double dist = std::sqrt(best_sq);
  double diameter = std::sqrt(static_cast<double>(corpus.dim()));
  double score = kScoreMax * (1.0 - dist / diameter);
  return std::clamp(score, kScoreMin, kScoreMax);
}

EuclideanScorer::EuclideanScorer(MaliciousCorpus corpus, FeatureTable features,
                                 double unknown_client_score)
    : corpus_(std::move(corpus)),
      features_(std::move(features)),
      unknown_client_score_(std::clamp(unknown_client_score, kScoreMin, kScoreMax)) {}

double EuclideanScorer::score(const std::string& client_ip) const {
  const FeatureVector* v = lookup_features(client_ip, features_);
  if (v == nullptr) return unknown_client_score_;
  return score_euclidean(*v, corpus_);
}

FixtureScorer::FixtureScorer(ScoreTable scores, double unknown_client_score)
    : scores_(std::move(scores)),
      unknown_client_score_(std::clamp(unknown_client_score, kScoreMin, kScoreMax)) {}

double FixtureScorer::score(const std::string& client_ip) const {
  auto it = scores_.find(client_ip);
  return it == scores_.end() ? unknown_client_score_ : it->second;
}

}  // namespace apw
