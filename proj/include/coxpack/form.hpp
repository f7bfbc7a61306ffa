#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "coxpack/errors.hpp"
#include "coxpack/graph.hpp"

namespace coxpack {

inline constexpr double kDefaultZeroTol = 1e-3;

/// Symmetric bilinear form in the simple-root basis.
class GramMatrix {
 public:
  GramMatrix() = default;

  /// Wraps an arbitrary symmetric matrix (asymmetry above 1e-12 is rejected).
  explicit GramMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) throw PreconditionError("Gram matrix must be square and nonempty");
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw PreconditionError("Gram matrix is not symmetric");
  }

  int size() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  /// B(x, y), accumulated in extended precision.
  double form(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    long double acc = 0;
    const int n = size();
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      long double row = 0;
      for (int j = 0; j < n; ++j) row += static_cast<long double>(m_(i, j)) * y[j];
      acc += static_cast<long double>(x[i]) * row;
    }
    return static_cast<double>(acc);
  }

  double norm(const Eigen::VectorXd& x) const { return form(x, x); }

  GramMatrix principal(std::span<const int> keep) const {
    const auto k = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m_(keep[i], keep[j]);
    return GramMatrix(std::move(sub));
  }

 private:
  Eigen::MatrixXd m_;
};

inline GramMatrix gram_matrix(const CoxeterGraph& g) {
  const int n = g.rank();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (const auto& e : g.edges()) {
    m(e.u, e.v) = e.label.gram_entry();
    m(e.v, e.u) = m(e.u, e.v);
  }
  return GramMatrix(std::move(m));
}

struct Signature {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;
  double min_eigenvalue = 0.0;

  bool operator==(const Signature&) const = default;
};

enum class TypeClass { Finite, Affine, Lorentzian, OtherIndefinite };

inline std::string_view to_string(TypeClass t) {
  switch (t) {
    case TypeClass::Finite: return "Finite";
    case TypeClass::Affine: return "Affine";
    case TypeClass::Lorentzian: return "Lorentzian";
    case TypeClass::OtherIndefinite: return "OtherIndefinite";
  }
  return "?";
}

inline Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline Signature signature(const GramMatrix& b, double zero_tol = kDefaultZeroTol) {
  if (!(zero_tol > 0)) throw PreconditionError("zero_tol must be positive");
  const Eigen::VectorXd ev = eigenvalues(b.matrix());
  Signature s;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > zero_tol)
      ++s.n_plus;
    else if (ev[i] < -zero_tol)
      ++s.n_minus;
    else
      ++s.n_zero;
  }
  s.min_eigenvalue = ev.minCoeff();
  return s;
}

inline TypeClass type_of(const Signature& s) {
  if (s.n_minus == 0) return s.n_zero == 0 ? TypeClass::Finite : TypeClass::Affine;
  if (s.n_minus == 1 && s.n_zero == 0) return TypeClass::Lorentzian;
  return TypeClass::OtherIndefinite;
}

inline TypeClass classify_type(const CoxeterGraph& g, double zero_tol = kDefaultZeroTol) {
  return type_of(signature(gram_matrix(g), zero_tol));
}

namespace detail {

// Level 0 means finite or affine: positive semidefinite up to zero_tol.
inline bool is_psd(const Eigen::MatrixXd& m, double zero_tol) {
  if (m.rows() == 1) return m(0, 0) >= -zero_tol;
  return eigenvalues(m).minCoeff() >= -zero_tol;
}

inline bool is_positive_definite(const Eigen::MatrixXd& m, double zero_tol) {
  if (m.rows() == 1) return m(0, 0) > zero_tol;
  return eigenvalues(m).minCoeff() > zero_tol;
}

inline Eigen::MatrixXd principal(const Eigen::MatrixXd& m, const std::vector<int>& keep) {
  const auto k = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(keep[i], keep[j]);
  return sub;
}

/// Calls f(subset) for every k-subset of 0..n-1 in lexicographic order; stops
/// early when f returns false. Returns false iff stopped.
template <class F>
bool for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(static_cast<const std::vector<int>&>(idx))) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Every principal submatrix of size n - r is positive semidefinite.
inline bool is_level_at_most(const GramMatrix& b, int r, double zero_tol = kDefaultZeroTol) {
  const int n = b.size();
  if (r < 0 || r >= n) throw PreconditionError("level bound r must satisfy 0 <= r < n");
  if (r == 0) return detail::is_psd(b.matrix(), zero_tol);
  return detail::for_each_subset(n, n - r, [&](const std::vector<int>& keep) {
    return detail::is_psd(detail::principal(b.matrix(), keep), zero_tol);
  });
}

inline bool is_level_at_most(const CoxeterGraph& g, int r, double zero_tol = kDefaultZeroTol) {
  return is_level_at_most(gram_matrix(g), r, zero_tol);
}

inline int level(const GramMatrix& b, double zero_tol = kDefaultZeroTol) {
  for (int r = 0; r < b.size() - 1; ++r)
    if (is_level_at_most(b, r, zero_tol)) return r;
  return b.size() - 1;
}

inline int level(const CoxeterGraph& g, double zero_tol = kDefaultZeroTol) {
  return level(gram_matrix(g), zero_tol);
}

/// Dual basis to the simple roots: column s is omega_s with B(alpha_t, omega_s)
/// = delta_ts, i.e. the inverse of B. norms[s] = B(omega_s, omega_s).
struct FundamentalWeights {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd norms;

  int size() const { return static_cast<int>(vectors.cols()); }
  Eigen::VectorXd weight(int s) const { return vectors.col(s); }
};

inline bool is_singular(const GramMatrix& b) {
  const int n = b.size();
  const double max_norm = b.matrix().cwiseAbs().maxCoeff();
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(b.matrix()).determinant();
  return std::abs(det) < 1e-9 * std::pow(max_norm, n);
}

inline FundamentalWeights fundamental_weights(const GramMatrix& b) {
  if (is_singular(b)) throw SingularFormError("bilinear form is singular; fundamental weights are undefined");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b.matrix());
  FundamentalWeights w;
  w.vectors = lu.inverse();
  w.vectors = 0.5 * (w.vectors + w.vectors.transpose()).eval();
  w.norms.resize(b.size());
  for (int s = 0; s < b.size(); ++s) w.norms[s] = b.norm(w.vectors.col(s));
  return w;
}

}  // namespace coxpack
