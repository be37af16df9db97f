#include "apw/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

#include "apw/errors.hpp"
#include "apw/ip.hpp"

namespace apw {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_cell(std::string_view cell, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(value)) {
    throw ParseError(ParseError::Kind::NonNumeric,
                     "line " + std::to_string(line_no) + ": cannot parse '" +
                         std::string(cell) + "' as a finite number");
  }
  return value;
}

// Yields non-empty lines; tolerates a trailing newline and CR before LF.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty()) fn(line, line_no);
    if (end == text.size()) break;
    start = end + 1;
  }
}

std::string canonical_or_throw(std::string_view cell, std::size_t line_no) {
  auto ip = canonical_ip(cell);
  if (!ip) {
    throw ParseError(ParseError::Kind::Malformed,
                     "line " + std::to_string(line_no) + ": '" +
                         std::string(cell) + "' is not an IP address");
  }
  return *ip;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

MaliciousCorpus parse_corpus(std::string_view csv) {
  MaliciousCorpus corpus;
  for_each_line(csv, [&](std::string_view line, std::size_t line_no) {
    auto cells = split(line, ',');
    FeatureVector point;
    point.reserve(cells.size());
    for (auto cell : cells) point.push_back(parse_cell(cell, line_no));
    if (!corpus.points.empty() && point.size() != corpus.points.front().size()) {
      throw ParseError(ParseError::Kind::RaggedRow,
                       "line " + std::to_string(line_no) + ": expected " +
                           std::to_string(corpus.points.front().size()) +
                           " columns, got " + std::to_string(point.size()));
    }
    corpus.points.push_back(std::move(point));
  });
  if (corpus.points.empty()) {
    throw ParseError(ParseError::Kind::EmptyCorpus, "corpus has no data rows");
  }

  std::size_t k = corpus.points.front().size();
  corpus.bounds.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    corpus.bounds[j] = {corpus.points.front()[j], corpus.points.front()[j]};
  }
  for (const auto& p : corpus.points) {
    for (std::size_t j = 0; j < k; ++j) {
      corpus.bounds[j].min = std::min(corpus.bounds[j].min, p[j]);
      corpus.bounds[j].max = std::max(corpus.bounds[j].max, p[j]);
    }
  }
  return corpus;
}

std::string serialize_corpus(const MaliciousCorpus& corpus) {
  std::string out;
  for (const auto& p : corpus.points) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out.push_back(',');
      out += format_double(p[j]);
    }
    out.push_back('\n');
  }
  return out;
}

FeatureVector normalize(const FeatureVector& v, const MaliciousCorpus& corpus) {
  if (v.size() != corpus.dim()) throw DimensionMismatch(corpus.dim(), v.size());
  FeatureVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto& b = corpus.bounds[j];
    if (b.max == b.min) {
      out[j] = 0.0;  // constant feature carries no distance information
    } else {
      out[j] = std::clamp((v[j] - b.min) / (b.max - b.min), 0.0, 1.0);
    }
  }
  return out;
}

FeatureTable parse_feature_table(std::string_view csv) {
  FeatureTable table;
  std::size_t k = 0;
  for_each_line(csv, [&](std::string_view line, std::size_t line_no) {
    auto cells = split(line, ',');
    if (cells.size() < 2) {
      throw ParseError(ParseError::Kind::RaggedRow,
                       "line " + std::to_string(line_no) +
                           ": expected ip plus at least one feature");
    }
    std::string ip = canonical_or_throw(cells[0], line_no);
    FeatureVector features;
    features.reserve(cells.size() - 1);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      features.push_back(parse_cell(cells[i], line_no));
    }
    if (k == 0) {
      k = features.size();
    } else if (features.size() != k) {
      throw ParseError(ParseError::Kind::RaggedRow,
                       "line " + std::to_string(line_no) + ": expected " +
                           std::to_string(k) + " features, got " +
                           std::to_string(features.size()));
    }
    table[std::move(ip)] = std::move(features);  // last row wins
  });
  return table;
}

ScoreTable parse_score_table(std::string_view csv) {
  ScoreTable table;
  for_each_line(csv, [&](std::string_view line, std::size_t line_no) {
    auto cells = split(line, ',');
    if (cells.size() != 2) {
      throw ParseError(ParseError::Kind::RaggedRow,
                       "line " + std::to_string(line_no) +
                           ": expected exactly 'ip,score'");
    }
    std::string ip = canonical_or_throw(cells[0], line_no);
    double score = parse_cell(cells[1], line_no);
    if (score < 0.0 || score > 10.0) {
      throw ParseError(ParseError::Kind::ScoreOutOfRange,
                       "line " + std::to_string(line_no) + ": score " +
                           std::string(cells[1]) + " outside [0,10]");
    }
    table[std::move(ip)] = score;  // last row wins
  });
  return table;
}

const FeatureVector* lookup_features(const std::string& ip,
                                     const FeatureTable& table) {
  auto it = table.find(ip);
  return it == table.end() ? nullptr : &it->second;
}

}  // namespace apw
