#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "evoman/controllers.hpp"
#include "evoman/sensors.hpp"

namespace evoman::testing {

inline bool dominates_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly = true;
  }
  return strictly;
}

// Peels fronts off an explicit domination matrix.
inline std::vector<std::vector<std::size_t>> brute_fronts(const std::vector<std::vector<double>>& v) {
  const std::size_t n = v.size();
  std::vector<std::vector<bool>> dom(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dom[i][j] = dominates_oracle(v[i], v[j]);
  std::vector<bool> removed(n, false);
  std::vector<std::vector<std::size_t>> fronts;
  std::size_t left = n;
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t j = 0; j < n; ++j) {
      if (removed[j]) continue;
      bool beaten = false;
      for (std::size_t i = 0; i < n && !beaten; ++i) beaten = !removed[i] && dom[i][j];
      if (!beaten) front.push_back(j);
    }
    for (auto j : front) removed[j] = true;
    left -= front.size();
    fronts.push_back(front);
  }
  return fronts;
}

// Independent forward pass: explicit weight matrices built from the layout
// (neuron-major rows, bias in the last column). Returns output logits.
inline std::array<double, 5> oracle_logits(const Genome& g, const SensorVector& x) {
  using Matrix = std::vector<std::vector<double>>;
  const std::size_t in = 20, hid = static_cast<std::size_t>(g.topology.hidden);
  std::size_t p = 0;
  auto take_rows = [&](std::size_t rows, std::size_t cols) {
    Matrix m(rows, std::vector<double>(cols + 1));
    for (auto& row : m)
      for (auto& v : row) v = g.weights.at(p++);
    return m;
  };
  std::vector<double> layer(x.values.begin(), x.values.end());
  if (hid > 0) {
    const Matrix w1 = take_rows(hid, in);
    std::vector<double> h(hid);
    for (std::size_t j = 0; j < hid; ++j) {
      double z = w1[j][in];
      for (std::size_t i = 0; i < in; ++i) z += w1[j][i] * layer[i];
      h[j] = std::tanh(z);
    }
    layer = h;
  }
  const std::size_t n = layer.size();
  const Matrix w2 = take_rows(5, n);
  if (p != g.weights.size()) throw std::logic_error("oracle consumed the wrong number of weights");
  std::array<double, 5> z{};
  for (std::size_t j = 0; j < 5; ++j) {
    z[j] = w2[j][n];
    for (std::size_t i = 0; i < n; ++i) z[j] += w2[j][i] * layer[i];
  }
  return z;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace evoman::testing
