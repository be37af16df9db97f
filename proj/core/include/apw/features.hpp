#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace apw {

// Raw per-client feature readings. The column semantics are opaque to the
// scorer; all that matters is a fixed dimension and finite values.
using FeatureVector = std::vector<double>;

struct FeatureBounds {
  double min = 0.0;
  double max = 0.0;
};

// Labeled-malicious reference set. bounds are the componentwise min/max of
// points and are kept in sync by parse_corpus.
struct MaliciousCorpus {
  std::vector<FeatureVector> points;
  std::vector<FeatureBounds> bounds;

  std::size_t dim() const { return bounds.size(); }
};

// CSV: no header, one feature vector per row, comma-separated decimals,
// LF line endings. Throws ParseError{EmptyCorpus|RaggedRow|NonNumeric}.
MaliciousCorpus parse_corpus(std::string_view csv);

// Shortest round-trippable decimal form; parse_corpus(serialize_corpus(c))
// reproduces points exactly.
std::string serialize_corpus(const MaliciousCorpus& corpus);

// Min-max normalization into the unit cube. A degenerate feature
// (min == max) maps to 0; out-of-bounds values clamp into [0,1].
// Throws DimensionMismatch.
FeatureVector normalize(const FeatureVector& v, const MaliciousCorpus& corpus);

// Static lookup tables, keyed by canonical IP text. Duplicate rows: last wins.
using FeatureTable = std::map<std::string, FeatureVector>;
using ScoreTable = std::map<std::string, double>;

// CSV rows "ip,f1,...,fk". Throws ParseError{Malformed|RaggedRow|NonNumeric}.
FeatureTable parse_feature_table(std::string_view csv);

// CSV rows "ip,score" with score in [0,10].
// Throws ParseError{Malformed|RaggedRow|NonNumeric|ScoreOutOfRange}.
ScoreTable parse_score_table(std::string_view csv);

// nullptr when the IP has no stored vector (absent is a value; the gate's
// unknown-client policy decides what happens).
const FeatureVector* lookup_features(const std::string& ip,
                                     const FeatureTable& table);

}  // namespace apw
