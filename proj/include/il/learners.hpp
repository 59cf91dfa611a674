#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "il/selection.hpp"

namespace il {

// Feature flags, in the fixed extraction order.
struct FeatureSet {
  bool mean = false;
  bool std_dev = false;
  bool median = false;
  bool rms = false;
  bool p2p = false;
  bool zcr = false;
  bool aav = false;

  int count() const;
  void validate() const;

  // mean, std, median, RMS, P2P for the air-quality pipeline.
  static FeatureSet five();
  // all seven for the vibration pipeline.
  static FeatureSet seven();
};

// Features of a sensor window in fixed flag order. Window length must be at
// least 2. Median uses the lower middle for even lengths; ZCR counts sign
// changes of the mean-removed signal per interval; AAV is the mean absolute
// first difference.
FeatureVector extract_features(const std::vector<double>& window, const FeatureSet& set);

// Euclidean feature distance.
double feature_distance(const FeatureVector& a, const FeatureVector& b);

enum class Classification : std::uint8_t { Normal = 0, Abnormal = 1 };

// kNN anomaly learner: a bounded example store with a percentile-based
// anomaly threshold.
struct KnnModel {
  std::deque<FeatureVector> examples;  // oldest first
  std::size_t capacity = 30;
  std::size_t k = 5;
  double percentile = 90.0;
  double threshold = 0.0;              // AS_TH
  bool threshold_valid = false;

  bool learnable_with_one_more() const { return examples.size() + 1 >= k + 1; }
};

// Sum of distances from e to its k nearest neighbors in the learned set.
// When e is bitwise equal to a member, one zero self-distance is excluded.
double knn_anomaly_score(const FeatureVector& e, const KnnModel& model);

// Inserts e (evicting oldest beyond capacity), rescores all members, and
// sets the threshold to the nearest-rank percentile of member scores.
KnnModel knn_learn(KnnModel model, const FeatureVector& e);

// Abnormal iff the score strictly exceeds the threshold.
Classification knn_infer(const KnnModel& model, const FeatureVector& e);

// Nearest-rank percentile of a score set: sorted[ceil(p/100 * n) - 1].
double nearest_rank_percentile(std::vector<double> scores, double percentile);

// Two-layer competitive-learning k-means: one weight row per cluster.
struct KmModel {
  std::vector<FeatureVector> weights;  // clusters x feature-dim
  double eta = 0.1;
  std::vector<std::optional<std::string>> labels;  // per cluster

  static KmModel zeros(std::size_t clusters, std::size_t dim, double eta);
};

// Activation a_j = sum_i w_ij x_i per cluster row.
std::vector<double> km_activation(const KmModel& model, const FeatureVector& x);

// Winner-take-all update: the row with the largest activation (ties to the
// lowest index) moves toward x by eta.
KmModel km_learn_step(KmModel model, const FeatureVector& x);

struct KmInference {
  std::size_t cluster = 0;
  std::optional<std::string> label;
};

KmInference km_infer(const KmModel& model, const FeatureVector& x);

// Cluster-then-label: each cluster takes the majority label of the labeled
// examples km_infer assigns to it. Majority ties go to the lexicographically
// lowest label.
KmModel label_clusters(KmModel model,
                       const std::vector<std::pair<FeatureVector, std::string>>& labeled_examples);

// Running per-dimension min-max bounds used to normalize features before
// they reach the competitive learner.
struct NormBounds {
  std::vector<double> lo;
  std::vector<double> hi;
  std::size_t observations = 0;

  void observe(const FeatureVector& x);
  FeatureVector normalize(const FeatureVector& x) const;
};

}  // namespace il
