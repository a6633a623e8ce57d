#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace flexq {

enum class DistanceMetric { kLevenshtein, kDamerau };

// Insert/delete/substitute distance, ASCII case-folded.
int levenshtein(std::string_view a, std::string_view b);

// Optimal-string-alignment variant: adjacent transposition counts as one
// edit, and no substring is edited more than once. So ("ca", "abc") is 3,
// not the unrestricted 2.
int damerau_levenshtein(std::string_view a, std::string_view b);

int edit_distance(std::string_view a, std::string_view b, DistanceMetric metric);

struct MatchResult {
  std::string candidate;
  int distance = 0;
  int rank = 0;  // 1-based position in the sorted list

  bool operator==(const MatchResult&) const = default;
};

// Candidates within max_distance of needle, sorted by (distance, candidate).
// Throws Error(kEmptyCandidateSet) when candidates is empty.
std::vector<MatchResult> best_match(std::string_view needle, const std::vector<std::string>& candidates,
                                    int max_distance,
                                    DistanceMetric metric = DistanceMetric::kLevenshtein);

}  // namespace flexq
