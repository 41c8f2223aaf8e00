#pragma once

// Projective rays, exact inner products and subspaces in reduced row-echelon
// form. Everything here is templated on the coordinate scalar so the same
// code serves the exact and the approximate datasets.

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ksobs/errors.hpp"
#include "ksobs/exactnum.hpp"

namespace ksobs {

template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
Vector<S> make_vector(std::initializer_list<S> coords) {
  Vector<S> v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) v(i++) = c;
  return v;
}

template <class S>
bool is_zero_vector(const Vector<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_zero(v(i))) return false;
  }
  return true;
}

/// Lexicographic order by coordinate value.
template <class S>
int compare(const Vector<S>& u, const Vector<S>& v) {
  const Eigen::Index n = std::min(u.size(), v.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (int c = compare(u(i), v(i)); c != 0) return c;
  }
  return (u.size() > v.size()) - (u.size() < v.size());
}

template <class S>
S inner(const Vector<S>& u, const Vector<S>& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::DimMismatch,
                "inner product of dimensions " + std::to_string(u.size()) + " and " +
                    std::to_string(v.size()));
  }
  S acc(0);
  for (Eigen::Index i = 0; i < u.size(); ++i) acc += u(i) * v(i);
  return acc;
}

/// A direction in projective space; v and -v are the same Ray. The stored
/// representative has its first nonzero coordinate equal to one.
template <class S>
class Ray {
 public:
  Ray() = default;

  const Vector<S>& vector() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

  friend bool operator==(const Ray& x, const Ray& y) {
    return x.v_.size() == y.v_.size() && same_coords(x.v_, y.v_);
  }

  template <class T>
  friend Ray<T> canonicalize(const Vector<T>& v);

 private:
  static bool same_coords(const Vector<S>& a, const Vector<S>& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (!(a(i) == b(i))) return false;
    }
    return true;
  }
  explicit Ray(Vector<S> v) : v_(std::move(v)) {}
  Vector<S> v_;
};

template <class S>
Ray<S> canonicalize(const Vector<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_zero(v(i))) {
      const S scale = inv(v(i));
      Vector<S> out(v.size());
      for (Eigen::Index j = 0; j < v.size(); ++j) out(j) = j < i ? S(0) : v(j) * scale;
      out(i) = S(1);
      return Ray<S>(std::move(out));
    }
  }
  throw Error(ErrorCode::ZeroVector, "cannot canonicalize the zero vector");
}

template <class S>
int compare(const Ray<S>& x, const Ray<S>& y) {
  return compare(x.vector(), y.vector());
}

template <class S>
bool orthogonal(const Ray<S>& x, const Ray<S>& y) {
  return is_zero(inner(x.vector(), y.vector()));
}

/// Reduces the rows of m in place to reduced row-echelon form and returns the
/// rank; rows past the rank are left zero. Exact scalars pivot on the first
/// nonzero entry, approximate ones on the largest magnitude.
template <class S>
Eigen::Index rref_in_place(Matrix<S>& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    if constexpr (is_exact_v<S>) {
      for (Eigen::Index r = rank; r < rows; ++r) {
        if (!is_zero(m(r, col))) {
          pivot = r;
          break;
        }
      }
    } else {
      double best = 0.0;
      for (Eigen::Index r = rank; r < rows; ++r) {
        if (is_zero(m(r, col))) continue;
        const double mag = std::abs(m(r, col).value());
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
    }
    if (pivot < 0) {
      for (Eigen::Index r = rank; r < rows; ++r) m(r, col) = S(0);
      continue;
    }
    if (pivot != rank) m.row(pivot).swap(m.row(rank));
    const S scale = inv(m(rank, col));
    for (Eigen::Index c = col; c < cols; ++c) m(rank, c) = m(rank, c) * scale;
    m(rank, col) = S(1);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == rank || is_zero(m(r, col))) {
        if (r != rank) m(r, col) = S(0);
        continue;
      }
      const S factor = m(r, col);
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) = m(r, c) - factor * m(rank, c);
      m(r, col) = S(0);
    }
    ++rank;
  }
  return rank;
}

/// Row space of a nonempty set of vectors, held as its unique RREF basis so
/// that subspace equality is matrix equality.
template <class S>
class Subspace {
 public:
  Subspace() = default;

  Eigen::Index ambient_dim() const { return basis_.cols(); }
  Eigen::Index rank() const { return basis_.rows(); }
  const Matrix<S>& basis() const { return basis_; }

  /// Pivot column of each basis row.
  std::vector<Eigen::Index> pivots() const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index r = 0; r < rank(); ++r) {
      for (Eigen::Index c = 0; c < ambient_dim(); ++c) {
        if (!is_zero(basis_(r, c))) {
          out.push_back(c);
          break;
        }
      }
    }
    return out;
  }

  bool contains_vector(const Vector<S>& v) const {
    if (v.size() != ambient_dim()) {
      throw Error(ErrorCode::DimMismatch, "vector and subspace dimensions differ");
    }
    Vector<S> rest = v;
    const auto piv = pivots();
    for (Eigen::Index r = 0; r < rank(); ++r) {
      const S coeff = rest(piv[static_cast<std::size_t>(r)]);
      if (is_zero(coeff)) continue;
      for (Eigen::Index c = 0; c < ambient_dim(); ++c) rest(c) = rest(c) - coeff * basis_(r, c);
    }
    return is_zero_vector(rest);
  }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    if (x.basis_.rows() != y.basis_.rows() || x.basis_.cols() != y.basis_.cols()) return false;
    for (Eigen::Index r = 0; r < x.basis_.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.basis_.cols(); ++c) {
        if (!(x.basis_(r, c) == y.basis_(r, c))) return false;
      }
    }
    return true;
  }

  /// Builds from generator rows; throws ZeroVector when they span nothing.
  static Subspace from_rows(Matrix<S> rows) {
    const Eigen::Index rank = rref_in_place(rows);
    if (rank == 0) throw Error(ErrorCode::ZeroVector, "span of zero vectors");
    Subspace s;
    s.basis_ = rows.topRows(rank);
    return s;
  }

 private:
  Matrix<S> basis_;
};

template <class S>
Subspace<S> span(const std::vector<Vector<S>>& vs) {
  if (vs.empty()) throw Error(ErrorCode::ZeroVector, "span of an empty set");
  const Eigen::Index n = vs.front().size();
  Matrix<S> rows(static_cast<Eigen::Index>(vs.size()), n);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != n) throw Error(ErrorCode::DimMismatch, "generators of different dimension");
    rows.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  }
  return Subspace<S>::from_rows(std::move(rows));
}

template <class S>
Subspace<S> span(const std::vector<Ray<S>>& rays) {
  std::vector<Vector<S>> vs;
  vs.reserve(rays.size());
  for (const auto& r : rays) vs.push_back(r.vector());
  return span(vs);
}

/// Nullspace of the basis matrix: every vector orthogonal to all of s.
template <class S>
Subspace<S> orthocomplement(const Subspace<S>& s) {
  const Eigen::Index n = s.ambient_dim();
  if (s.rank() >= n) throw Error(ErrorCode::FullRank, "orthocomplement of the whole space");
  const auto piv = s.pivots();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto p : piv) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<Vector<S>> gens;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<S> x = Vector<S>::Zero(n);
    x(f) = S(1);
    for (Eigen::Index r = 0; r < s.rank(); ++r) x(piv[static_cast<std::size_t>(r)]) = -s.basis()(r, f);
    gens.push_back(std::move(x));
  }
  return span(gens);
}

template <class S>
bool contains(const Subspace<S>& big, const Subspace<S>& small) {
  if (big.ambient_dim() != small.ambient_dim()) {
    throw Error(ErrorCode::DimMismatch, "subspaces live in different dimensions");
  }
  for (Eigen::Index r = 0; r < small.rank(); ++r) {
    if (!big.contains_vector(small.basis().row(r).transpose())) return false;
  }
  return true;
}

/// Every basis row of x is orthogonal to every basis row of y.
template <class S>
bool orthogonal(const Subspace<S>& x, const Subspace<S>& y) {
  for (Eigen::Index i = 0; i < x.rank(); ++i) {
    for (Eigen::Index j = 0; j < y.rank(); ++j) {
      if (!is_zero(inner<S>(x.basis().row(i).transpose(), y.basis().row(j).transpose()))) return false;
    }
  }
  return true;
}

/// Zero-pads v to target coordinates.
template <class S>
Vector<S> pad(const Vector<S>& v, Eigen::Index target) {
  Vector<S> out = Vector<S>::Zero(target);
  out.head(v.size()) = v;
  return out;
}

}  // namespace ksobs
