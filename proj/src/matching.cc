#include "flexq/matching.h"

#include <algorithm>
#include <numeric>

#include "flexq/error.h"
#include "flexq/text.h"

namespace flexq {

int levenshtein(std::string_view a_in, std::string_view b_in) {
  const std::string a = to_lower(a_in);
  const std::string b = to_lower(b_in);
  std::vector<int> prev(b.size() + 1);
  std::vector<int> cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

int damerau_levenshtein(std::string_view a_in, std::string_view b_in) {
  const std::string a = to_lower(a_in);
  const std::string b = to_lower(b_in);
  const size_t n = a.size();
  const size_t m = b.size();
  // Three rolling rows: i-2, i-1, i.
  std::vector<int> two(m + 1), one(m + 1), cur(m + 1);
  std::iota(one.begin(), one.end(), 0);
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= m; ++j) {
      int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({one[j] + 1, cur[j - 1] + 1, one[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        cur[j] = std::min(cur[j], two[j - 2] + 1);
      }
    }
    std::swap(two, one);
    std::swap(one, cur);
  }
  return one[m];
}

int edit_distance(std::string_view a, std::string_view b, DistanceMetric metric) {
  return metric == DistanceMetric::kDamerau ? damerau_levenshtein(a, b) : levenshtein(a, b);
}

std::vector<MatchResult> best_match(std::string_view needle, const std::vector<std::string>& candidates,
                                    int max_distance, DistanceMetric metric) {
  if (candidates.empty()) {
    throw Error(ErrorKind::kEmptyCandidateSet, "no candidates to match '" + std::string(needle) + "'");
  }
  std::vector<MatchResult> out;
  for (const auto& c : candidates) {
    int d = edit_distance(needle, c, metric);
    if (d <= max_distance) out.push_back({c, d, 0});
  }
  std::sort(out.begin(), out.end(), [](const MatchResult& x, const MatchResult& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    return x.candidate < y.candidate;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const MatchResult& x, const MatchResult& y) {
                          return x.candidate == y.candidate;
                        }),
            out.end());
  for (size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
  return out;
}

}  // namespace flexq
