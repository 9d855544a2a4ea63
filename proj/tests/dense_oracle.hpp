#pragma once

// Test-only dense reference: builds A and A' as explicit matrices from edge
// lists and applies W_UI = A^T D_U^-1 A D_I^-1 and W_IT = A' D_T^-1 A'^T D'_I^-1
// in long double. Shares no code with the library kernels.

#include <cstddef>
#include <utility>
#include <vector>

namespace tagdiff::testing {

using Matrix = std::vector<std::vector<long double>>;

inline Matrix zeros(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<long double>(cols, 0.0L));
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix c = zeros(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][p] * b[p][j];
  return c;
}

inline Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t = zeros(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Diagonal matrix of 1/row-sums (0 where the row is empty).
inline Matrix inverse_row_degree(const Matrix& a) {
  Matrix d = zeros(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    long double s = 0;
    for (auto v : a[i]) s += v;
    d[i][i] = s > 0 ? 1.0L / s : 0.0L;
  }
  return d;
}

// `incidence` is middle x items (A for users, A'^T for tags).
inline Matrix transition(const Matrix& incidence) {
  const Matrix d_middle = inverse_row_degree(incidence);
  const Matrix d_items = inverse_row_degree(transpose(incidence));
  return multiply(multiply(multiply(transpose(incidence), d_middle), incidence), d_items);
}

struct DenseOracle {
  Matrix user_item;  // m x m
  Matrix item_tag;   // m x m

  // edges: (user, item) and (item, tag) index pairs.
  DenseOracle(std::size_t n, std::size_t m, std::size_t r,
              const std::vector<std::pair<std::size_t, std::size_t>>& ui,
              const std::vector<std::pair<std::size_t, std::size_t>>& it) {
    Matrix a = zeros(n, m), at = zeros(r, m);
    for (auto [u, i] : ui) a[u][i] = 1.0L;
    for (auto [i, t] : it) at[t][i] = 1.0L;
    user_item = transition(a);
    item_tag = transition(at);
  }

  static std::vector<long double> apply(const Matrix& w, const std::vector<long double>& f) {
    std::vector<long double> out(w.size(), 0.0L);
    for (std::size_t j = 0; j < w.size(); ++j)
      for (std::size_t s = 0; s < f.size(); ++s) out[j] += w[j][s] * f[s];
    return out;
  }
};

}  // namespace tagdiff::testing
