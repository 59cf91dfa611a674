#include "il/learners.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace il {

int FeatureSet::count() const {
  return int(mean) + int(std_dev) + int(median) + int(rms) + int(p2p) + int(zcr) + int(aav);
}

void FeatureSet::validate() const {
  if (count() == 0) throw ContractViolation("feature set must enable at least one feature");
}

FeatureSet FeatureSet::five() {
  FeatureSet s;
  s.mean = s.std_dev = s.median = s.rms = s.p2p = true;
  return s;
}

FeatureSet FeatureSet::seven() {
  FeatureSet s;
  s.mean = s.std_dev = s.median = s.rms = s.p2p = s.zcr = s.aav = true;
  return s;
}

FeatureVector extract_features(const std::vector<double>& window, const FeatureSet& set) {
  set.validate();
  if (window.size() < 2) throw ContractViolation("window must hold at least 2 samples");
  const double n = static_cast<double>(window.size());

  double mean = 0.0;
  for (double v : window) mean += v;
  mean /= n;

  FeatureVector out;
  if (set.mean) out.push_back(mean);

  if (set.std_dev) {
    double var = 0.0;
    for (double v : window) var += (v - mean) * (v - mean);
    out.push_back(std::sqrt(var / n));  // population std
  }

  if (set.median) {
    std::vector<double> sorted = window;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(sorted[(sorted.size() - 1) / 2]);  // lower middle for even n
  }

  if (set.rms) {
    double sq = 0.0;
    for (double v : window) sq += v * v;
    out.push_back(std::sqrt(sq / n));
  }

  if (set.p2p) {
    auto [lo, hi] = std::minmax_element(window.begin(), window.end());
    out.push_back(*hi - *lo);
  }

  if (set.zcr) {
    int crossings = 0;
    for (std::size_t i = 0; i + 1 < window.size(); ++i) {
      double a = window[i] - mean;
      double b = window[i + 1] - mean;
      if ((a < 0) != (b < 0)) ++crossings;
    }
    out.push_back(crossings / (n - 1));
  }

  if (set.aav) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < window.size(); ++i) {
      sum += std::abs(window[i + 1] - window[i]);
    }
    out.push_back(sum / (n - 1));
  }
  return out;
}

double feature_distance(const FeatureVector& a, const FeatureVector& b) {
  return euclidean(a, b);
}

namespace {

// Score against the member list, optionally excluding one index.
double score_against(const FeatureVector& e, const KnnModel& model,
                     std::optional<std::size_t> exclude) {
  std::size_t available = model.examples.size() - (exclude ? 1 : 0);
  if (available < model.k) {
    throw ContractViolation("knn score requires at least k stored examples");
  }
  std::vector<double> dists;
  dists.reserve(available);
  for (std::size_t i = 0; i < model.examples.size(); ++i) {
    if (exclude && *exclude == i) continue;
    dists.push_back(feature_distance(e, model.examples[i]));
  }
  std::partial_sort(dists.begin(), dists.begin() + model.k, dists.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < model.k; ++i) sum += dists[i];
  return sum;
}

}  // namespace

double knn_anomaly_score(const FeatureVector& e, const KnnModel& model) {
  std::optional<std::size_t> exclude;
  for (std::size_t i = 0; i < model.examples.size(); ++i) {
    if (model.examples[i] == e) {
      exclude = i;
      break;
    }
  }
  return score_against(e, model, exclude);
}

double nearest_rank_percentile(std::vector<double> scores, double percentile) {
  if (scores.empty()) throw ContractViolation("percentile of an empty set");
  std::sort(scores.begin(), scores.end());
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(percentile / 100.0 * static_cast<double>(scores.size())));
  rank = std::max<std::size_t>(rank, 1);
  rank = std::min(rank, scores.size());
  return scores[rank - 1];
}

KnnModel knn_learn(KnnModel model, const FeatureVector& e) {
  model.examples.push_back(e);
  while (model.examples.size() > model.capacity) model.examples.pop_front();
  if (model.examples.size() >= model.k + 1) {
    std::vector<double> scores;
    scores.reserve(model.examples.size());
    for (std::size_t i = 0; i < model.examples.size(); ++i) {
      scores.push_back(score_against(model.examples[i], model, i));
    }
    model.threshold = nearest_rank_percentile(std::move(scores), model.percentile);
    model.threshold_valid = true;
  }
  return model;
}

Classification knn_infer(const KnnModel& model, const FeatureVector& e) {
  if (!model.threshold_valid) {
    throw ContractViolation("knn_infer requires a computed threshold");
  }
  return knn_anomaly_score(e, model) > model.threshold ? Classification::Abnormal
                                                       : Classification::Normal;
}

KmModel KmModel::zeros(std::size_t clusters, std::size_t dim, double eta) {
  KmModel m;
  m.weights.assign(clusters, FeatureVector(dim, 0.0));
  m.labels.assign(clusters, std::nullopt);
  m.eta = eta;
  return m;
}

std::vector<double> km_activation(const KmModel& model, const FeatureVector& x) {
  std::vector<double> a;
  a.reserve(model.weights.size());
  for (const auto& row : model.weights) {
    if (row.size() != x.size()) throw ContractViolation("activation dimension mismatch");
    double dot = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) dot += row[i] * x[i];
    a.push_back(dot);
  }
  return a;
}

namespace {

std::size_t winner_of(const std::vector<double>& a) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < a.size(); ++j) {
    if (a[j] > a[best]) best = j;  // ties keep the lowest index
  }
  return best;
}

}  // namespace

KmModel km_learn_step(KmModel model, const FeatureVector& x) {
  auto a = km_activation(model, x);
  std::size_t j = winner_of(a);
  auto& w = model.weights[j];
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] += model.eta * (x[i] - w[i]);
  }
  return model;
}

KmInference km_infer(const KmModel& model, const FeatureVector& x) {
  auto a = km_activation(model, x);
  std::size_t j = winner_of(a);
  return {j, model.labels[j]};
}

KmModel label_clusters(KmModel model,
                       const std::vector<std::pair<FeatureVector, std::string>>& labeled_examples) {
  if (labeled_examples.empty()) return model;  // nothing to do; caller logs a warning
  std::vector<std::map<std::string, int>> votes(model.weights.size());
  for (const auto& [x, label] : labeled_examples) {
    votes[km_infer(model, x).cluster][label] += 1;
  }
  for (std::size_t j = 0; j < votes.size(); ++j) {
    if (votes[j].empty()) continue;
    // std::map iterates labels in ascending order, so on a tie the
    // lexicographically lowest label wins.
    auto best = votes[j].begin();
    for (auto it = votes[j].begin(); it != votes[j].end(); ++it) {
      if (it->second > best->second) best = it;
    }
    model.labels[j] = best->first;
  }
  return model;
}

void NormBounds::observe(const FeatureVector& x) {
  ++observations;
  if (lo.empty()) {
    lo = x;
    hi = x;
    return;
  }
  if (lo.size() != x.size()) throw ContractViolation("norm bounds dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo[i] = std::min(lo[i], x[i]);
    hi[i] = std::max(hi[i], x[i]);
  }
}

FeatureVector NormBounds::normalize(const FeatureVector& x) const {
  if (lo.empty()) return FeatureVector(x.size(), 0.5);
  FeatureVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double range = hi[i] - lo[i];
    out[i] = range > 0 ? (x[i] - lo[i]) / range : 0.5;
  }
  return out;
}

}  // namespace il
