// Copyright 2026 The phirisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Independent reference computations used only by the tests. They favour
// brute force and textbook formulas over speed and share no code with the
// library beyond plain data types.

#ifndef PHIRISK_TESTS_ORACLES_H_
#define PHIRISK_TESTS_ORACLES_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Bernoulli NB posteriors by explicit products of probabilities.
inline std::vector<std::array<double, 2>> bernoulli_posteriors(const Matrix& train,
                                                               const std::vector<int>& y,
                                                               double alpha,
                                                               const Matrix& query) {
  std::size_t d = train[0].size();
  std::array<double, 2> n{};
  std::array<std::vector<double>, 2> on{std::vector<double>(d, 0), std::vector<double>(d, 0)};
  for (std::size_t i = 0; i < train.size(); ++i) {
    n[y[i]] += 1;
    for (std::size_t j = 0; j < d; ++j) on[y[i]][j] += train[i][j];
  }
  std::vector<std::array<double, 2>> out;
  for (const auto& q : query) {
    std::array<double, 2> joint{};
    for (int c = 0; c < 2; ++c) {
      double p = n[c] / (n[0] + n[1]);
      for (std::size_t j = 0; j < d; ++j) {
        double theta = (on[c][j] + alpha) / (n[c] + 2 * alpha);
        p *= q[j] > 0 ? theta : 1 - theta;
      }
      joint[c] = p;
    }
    double z = joint[0] + joint[1];
    out.push_back({joint[0] / z, joint[1] / z});
  }
  return out;
}

inline double normal_pdf(double x, double mean, double variance) {
  const double pi = 3.14159265358979323846;
  return std::exp(-(x - mean) * (x - mean) / (2 * variance)) / std::sqrt(2 * pi * variance);
}

// Gaussian NB posteriors from the density formula. Variances are population
// variances plus smoothing * (largest population variance over features).
inline std::vector<std::array<double, 2>> gaussian_posteriors(const Matrix& train,
                                                              const std::vector<int>& y,
                                                              double smoothing,
                                                              const Matrix& query) {
  std::size_t d = train[0].size();
  double largest = 0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0;
    for (const auto& row : train) mean += row[j];
    mean /= train.size();
    double var = 0;
    for (const auto& row : train) var += (row[j] - mean) * (row[j] - mean);
    largest = std::max(largest, var / train.size());
  }
  double eps = smoothing * largest;
  std::array<std::vector<double>, 2> mean, var;
  std::array<double, 2> n{};
  for (int c = 0; c < 2; ++c) {
    mean[c].assign(d, 0);
    var[c].assign(d, 0);
    for (std::size_t i = 0; i < train.size(); ++i) {
      if (y[i] != c) continue;
      n[c] += 1;
      for (std::size_t j = 0; j < d; ++j) mean[c][j] += train[i][j];
    }
    for (std::size_t j = 0; j < d; ++j) mean[c][j] /= n[c];
    for (std::size_t i = 0; i < train.size(); ++i) {
      if (y[i] != c) continue;
      for (std::size_t j = 0; j < d; ++j) {
        var[c][j] += (train[i][j] - mean[c][j]) * (train[i][j] - mean[c][j]);
      }
    }
    for (std::size_t j = 0; j < d; ++j) var[c][j] = var[c][j] / n[c] + eps;
  }
  std::vector<std::array<double, 2>> out;
  for (const auto& q : query) {
    std::array<double, 2> joint{};
    for (int c = 0; c < 2; ++c) {
      joint[c] = n[c] / (n[0] + n[1]);
      for (std::size_t j = 0; j < d; ++j) joint[c] *= normal_pdf(q[j], mean[c][j], var[c][j]);
    }
    double z = joint[0] + joint[1];
    out.push_back({joint[0] / z, joint[1] / z});
  }
  return out;
}

struct StumpChoice {
  std::size_t feature = 0;
  double threshold = 0;
  int polarity = 1;
  double error = std::numeric_limits<double>::infinity();
};

inline int stump_vote(const StumpChoice& s, double v) {
  return v > s.threshold ? s.polarity : -s.polarity;
}

inline double stump_error(const StumpChoice& s, const Matrix& x, const std::vector<int>& y,
                          const std::vector<double>& w) {
  double err = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (stump_vote(s, x[i][s.feature]) != (y[i] == 1 ? 1 : -1)) err += w[i];
  }
  return err;
}

// Every feature, every midpoint of consecutive distinct values, both polarities.
inline StumpChoice exhaustive_stump(const Matrix& x, const std::vector<int>& y,
                                    const std::vector<double>& w) {
  StumpChoice best;
  for (std::size_t j = 0; j < x[0].size(); ++j) {
    std::set<double> values;
    for (const auto& row : x) values.insert(row[j]);
    std::vector<double> sorted(values.begin(), values.end());
    for (std::size_t t = 0; t + 1 < sorted.size(); ++t) {
      for (int polarity : {1, -1}) {
        StumpChoice s{j, (sorted[t] + sorted[t + 1]) / 2, polarity, 0};
        s.error = stump_error(s, x, y, w);
        if (s.error < best.error - 1e-12) best = s;
      }
    }
  }
  return best;
}

struct BoostTrace {
  std::vector<StumpChoice> stumps;
  std::vector<double> alphas;
  std::vector<double> errors;
};

// Discrete two-class boosting with an exhaustive stump search per round.
inline BoostTrace brute_force_boost(const Matrix& x, const std::vector<int>& y, int rounds,
                                    double rate) {
  std::vector<double> w(x.size(), 1.0 / x.size());
  BoostTrace trace;
  for (int r = 0; r < rounds; ++r) {
    StumpChoice s = exhaustive_stump(x, y, w);
    if (!(s.error < 0.5)) break;
    double e = std::max(s.error, 1e-10);
    double alpha = rate * std::log((1 - e) / e);
    trace.stumps.push_back(s);
    trace.alphas.push_back(alpha);
    trace.errors.push_back(s.error);
    if (s.error <= 0) break;
    double sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (stump_vote(s, x[i][s.feature]) != (y[i] == 1 ? 1 : -1)) w[i] *= std::exp(alpha);
      sum += w[i];
    }
    for (double& v : w) v /= sum;
  }
  return trace;
}

inline std::vector<int> boost_predict(const BoostTrace& trace, const Matrix& x) {
  std::vector<int> out;
  for (const auto& row : x) {
    double score = 0;
    for (std::size_t t = 0; t < trace.stumps.size(); ++t) {
      score += trace.alphas[t] * stump_vote(trace.stumps[t], row[trace.stumps[t].feature]);
    }
    out.push_back(score > 0 ? 1 : 0);
  }
  return out;
}

inline double gini(double low, double high) {
  double n = low + high;
  if (n == 0) return 0;
  return 1 - (low / n) * (low / n) - (high / n) * (high / n);
}

struct SplitChoice {
  std::size_t feature = 0;
  double threshold = 0;
  double impurity = std::numeric_limits<double>::infinity();
};

// Size-weighted child Gini over every (feature, midpoint) pair.
inline SplitChoice exhaustive_split(const Matrix& x, const std::vector<int>& y) {
  SplitChoice best;
  for (std::size_t j = 0; j < x[0].size(); ++j) {
    std::set<double> values;
    for (const auto& row : x) values.insert(row[j]);
    std::vector<double> sorted(values.begin(), values.end());
    for (std::size_t t = 0; t + 1 < sorted.size(); ++t) {
      double threshold = (sorted[t] + sorted[t + 1]) / 2;
      std::array<double, 2> left{}, right{};
      for (std::size_t i = 0; i < x.size(); ++i) {
        (x[i][j] <= threshold ? left : right)[y[i]] += 1;
      }
      double n = static_cast<double>(x.size());
      double impurity = (left[0] + left[1]) / n * gini(left[0], left[1]) +
                        (right[0] + right[1]) / n * gini(right[0], right[1]);
      if (impurity < best.impurity - 1e-12) best = {j, threshold, impurity};
    }
  }
  return best;
}

// 0.5 (|w|^2 + b^2) + C sum max(0, 1 - y (w.x + b))^2
inline double squared_hinge_objective(const std::vector<double>& w, double b, const Matrix& x,
                                      const std::vector<int>& y, double c) {
  double obj = b * b;
  for (double v : w) obj += v * v;
  obj *= 0.5;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = b;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[i][j];
    double margin = 1 - (y[i] == 1 ? 1 : -1) * s;
    if (margin > 0) obj += c * margin * margin;
  }
  return obj;
}

struct LinearSolution {
  std::vector<double> w;
  double b = 0;
  double objective = 0;
};

// Plain gradient descent on the smooth primal with step 1/L.
inline LinearSolution primal_gradient_descent(const Matrix& x, const std::vector<int>& y,
                                              double c, int iterations) {
  std::size_t d = x[0].size();
  double lipschitz = 1;
  for (const auto& row : x) {
    double norm = 1;
    for (double v : row) norm += v * v;
    lipschitz += 2 * c * norm;
  }
  std::vector<double> w(d, 0), g(d);
  double b = 0;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t j = 0; j < d; ++j) g[j] = w[j];
    double gb = b;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double yi = y[i] == 1 ? 1 : -1;
      double s = b;
      for (std::size_t j = 0; j < d; ++j) s += w[j] * x[i][j];
      double margin = 1 - yi * s;
      if (margin <= 0) continue;
      for (std::size_t j = 0; j < d; ++j) g[j] -= 2 * c * margin * yi * x[i][j];
      gb -= 2 * c * margin * yi;
    }
    for (std::size_t j = 0; j < d; ++j) w[j] -= g[j] / lipschitz;
    b -= gb / lipschitz;
  }
  return {w, b, squared_hinge_objective(w, b, x, y, c)};
}

inline double rbf(const std::vector<double>& a, const std::vector<double>& b, double gamma) {
  double d2 = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d2 += (a[j] - b[j]) * (a[j] - b[j]);
  return std::exp(-gamma * d2);
}

struct DualSolution {
  std::vector<double> alpha;
  double b = 0;
};

// Euclidean projection onto {0 <= a <= C, sum a_i y_i = 0} via bisection on
// the multiplier of the equality constraint.
inline std::vector<double> project(const std::vector<double>& v, const std::vector<double>& y,
                                   double c) {
  auto at = [&](double lambda) {
    std::vector<double> a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::clamp(v[i] - lambda * y[i], 0.0, c);
    return a;
  };
  auto residual = [&](double lambda) {
    auto a = at(lambda);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * y[i];
    return s;
  };
  double lo = -1e6, hi = 1e6;  // residual is non-increasing in lambda
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2;
    if (residual(mid) > 0) lo = mid; else hi = mid;
  }
  return at((lo + hi) / 2);
}

// Projected gradient on min 0.5 a'Qa - sum a over the full Gram matrix.
inline DualSolution dense_dual(const Matrix& x, const std::vector<int>& labels, double c,
                               double gamma, int iterations) {
  std::size_t n = x.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = labels[i] == 1 ? 1 : -1;
  Matrix q(n, std::vector<double>(n));
  double trace = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] = y[i] * y[j] * rbf(x[i], x[j], gamma);
    trace += q[i][i];
  }
  double step = 1 / trace;  // trace bounds the largest eigenvalue
  std::vector<double> a(n, 0), v(n);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double g = -1;
      for (std::size_t j = 0; j < n; ++j) g += q[i][j] * a[j];
      v[i] = a[i] - step * g;
    }
    a = project(v, y, c);
  }
  // Bias from the free multipliers.
  double sum = 0;
  int free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] > 1e-8 && a[i] < c - 1e-8) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += a[j] * y[j] * rbf(x[j], x[i], gamma);
      sum += y[i] - s;
      ++free;
    }
  }
  return {a, free > 0 ? sum / free : 0};
}

inline double dual_decision(const DualSolution& sol, const Matrix& train,
                            const std::vector<int>& labels, double gamma,
                            const std::vector<double>& query) {
  double s = sol.b;
  for (std::size_t i = 0; i < train.size(); ++i) {
    s += sol.alpha[i] * (labels[i] == 1 ? 1 : -1) * rbf(train[i], query, gamma);
  }
  return s;
}

inline std::array<double, 3> direct_metrics(const std::vector<int>& t, const std::vector<int>& p) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 1 && p[i] == 1) tp += 1;
    if (t[i] == 0 && p[i] == 1) fp += 1;
    if (t[i] == 1 && p[i] == 0) fn += 1;
  }
  double precision = tp + fp > 0 ? tp / (tp + fp) : 0;
  double recall = tp + fn > 0 ? tp / (tp + fn) : 0;
  double f1 = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0;
  return {precision, recall, f1};
}

}  // namespace oracle

#endif  // PHIRISK_TESTS_ORACLES_H_
