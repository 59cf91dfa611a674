#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <random>
#include <vector>

#include "il/core.hpp"

namespace il {

using FeatureVector = std::vector<double>;
using DistanceFn = std::function<double(const FeatureVector&, const FeatureVector&)>;

double euclidean(const FeatureVector& a, const FeatureVector& b);

enum class Heuristic : std::uint8_t { None, RoundRobin, KLast, Random };

const char* to_string(Heuristic h);

// State shared by the online selection heuristics: the k-last lists B
// (selected) and B' (rejected), the per-cluster counts, and the round-robin
// counter n.
struct SelectionWindow {
  std::size_t k = 3;
  std::deque<FeatureVector> selected;        // B, oldest first
  std::deque<FeatureVector> rejected;        // B'
  std::vector<std::int64_t> per_cluster_counts;
  std::int64_t rr_counter = 0;               // n, examples selected so far
};

// Shannon entropy of a posterior distribution, in nats.
double uncertainty(const std::vector<double>& posteriors);

// Mean pairwise distance over B x B, self-pairs included.
double diversity(const std::vector<FeatureVector>& b, const DistanceFn& d);

// Mean distance between selected and non-selected examples; lower is better.
double representation(const std::vector<FeatureVector>& b, const std::vector<FeatureVector>& b_prime,
                      const DistanceFn& d);

// Round-robin selection: x is selected iff its nearest centroid (1-based,
// ties to the lowest index) equals 1 + (n mod k).
bool select_round_robin(const FeatureVector& x, const std::vector<FeatureVector>& centroids,
                        SelectionWindow& window, const DistanceFn& d);

// k-last lists selection: accept iff adding x raises diversity(B) and lowers
// representation(B, B'). While |B| < 2 or |B'| < 1 the state is bootstrapped
// by selecting unconditionally, alternating placement into B then B'.
bool select_k_last(const FeatureVector& x, SelectionWindow& window, const DistanceFn& d);

bool select_random(double p, std::mt19937_64& rng);

}  // namespace il
