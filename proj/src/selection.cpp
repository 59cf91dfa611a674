#include "il/selection.hpp"

#include <algorithm>
#include <cmath>

namespace il {

double euclidean(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) throw ContractViolation("feature dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

const char* to_string(Heuristic h) {
  switch (h) {
    case Heuristic::None: return "none";
    case Heuristic::RoundRobin: return "round_robin";
    case Heuristic::KLast: return "k_last";
    case Heuristic::Random: return "random";
  }
  return "?";
}

double uncertainty(const std::vector<double>& posteriors) {
  double sum = 0.0;
  for (double p : posteriors) {
    if (p < 0) throw ContractViolation("posterior probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ContractViolation("posteriors must sum to 1");
  double h = 0.0;
  for (double p : posteriors) {
    if (p > 0) h -= p * std::log(p);
  }
  return h;
}

double diversity(const std::vector<FeatureVector>& b, const DistanceFn& d) {
  if (b.empty()) throw ContractViolation("diversity requires a non-empty set");
  double sum = 0.0;
  for (const auto& x : b) {
    for (const auto& y : b) sum += d(x, y);
  }
  return sum / (static_cast<double>(b.size()) * static_cast<double>(b.size()));
}

double representation(const std::vector<FeatureVector>& b, const std::vector<FeatureVector>& b_prime,
                      const DistanceFn& d) {
  if (b.empty() || b_prime.empty()) {
    throw ContractViolation("representation requires non-empty sets");
  }
  double sum = 0.0;
  for (const auto& x : b) {
    for (const auto& y : b_prime) sum += d(x, y);
  }
  return sum / (static_cast<double>(b.size()) * static_cast<double>(b_prime.size()));
}

bool select_round_robin(const FeatureVector& x, const std::vector<FeatureVector>& centroids,
                        SelectionWindow& window, const DistanceFn& d) {
  if (centroids.empty()) throw ContractViolation("round-robin requires at least one centroid");
  const std::size_t k = centroids.size();
  if (window.per_cluster_counts.size() != k) window.per_cluster_counts.assign(k, 0);

  std::size_t argmin = 0;
  double best = d(x, centroids[0]);
  for (std::size_t j = 1; j < k; ++j) {
    double dist = d(x, centroids[j]);
    if (dist < best) {
      best = dist;
      argmin = j;
    }
  }
  // 1-based comparison per the round-robin rule.
  std::size_t required = 1 + static_cast<std::size_t>(window.rr_counter % static_cast<std::int64_t>(k));
  bool selected = (argmin + 1) == required;
  if (selected) {
    window.rr_counter += 1;
    window.per_cluster_counts[argmin] += 1;
  }
  return selected;
}

namespace {

std::vector<FeatureVector> as_vector(const std::deque<FeatureVector>& q) {
  return {q.begin(), q.end()};
}

void push_bounded(std::deque<FeatureVector>& q, const FeatureVector& x, std::size_t k) {
  q.push_back(x);
  while (q.size() > k) q.pop_front();
}

}  // namespace

bool select_k_last(const FeatureVector& x, SelectionWindow& window, const DistanceFn& d) {
  if (window.selected.size() < 2 || window.rejected.empty()) {
    // Bootstrap: the criteria are undefined on short lists. Select
    // unconditionally, alternating placement into B then B' so both lists
    // fill up.
    if (window.selected.empty()) {
      push_bounded(window.selected, x, window.k);
    } else if (window.rejected.empty()) {
      push_bounded(window.rejected, x, window.k);
    } else {
      push_bounded(window.selected, x, window.k);
    }
    return true;
  }

  auto b = as_vector(window.selected);
  auto bp = as_vector(window.rejected);
  auto b_with_x = b;
  b_with_x.push_back(x);

  bool accept = diversity(b_with_x, d) > diversity(b, d) &&
                representation(b_with_x, bp, d) < representation(b, bp, d);
  if (accept) {
    push_bounded(window.selected, x, window.k);
  } else {
    push_bounded(window.rejected, x, window.k);
  }
  return accept;
}

bool select_random(double p, std::mt19937_64& rng) {
  if (p < 0.0 || p > 1.0) throw ContractViolation("selection probability must be in [0, 1]");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < p;
}

}  // namespace il
