#include "rog/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rog {

SymMatrix::SymMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {
  if (dim < 0 || dim > kMaxDim) throw DimensionMismatch("matrix dimension out of range");
}

SymMatrix SymMatrix::zero(int n) { return SymMatrix(n); }

SymMatrix SymMatrix::identity(int n) {
  SymMatrix M(n);
  for (int i = 0; i < n; ++i) M.at(i, i) = 1.0;
  return M;
}

SymMatrix SymMatrix::diag(const Vec& d) {
  SymMatrix M(static_cast<int>(d.size()));
  for (int i = 0; i < M.n; ++i) M.at(i, i) = d[i];
  return M;
}

SymMatrix SymMatrix::from_rows(const std::vector<Vec>& rows) {
  const int n = static_cast<int>(rows.size());
  SymMatrix M(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw DimensionMismatch("non-square matrix data");
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j])) throw ParseError("non-finite matrix entry");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M.at(i, j) = 0.5 * (rows[i][j] + rows[j][i]);
  return M;
}

double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double nrm2(const Vec& x) { return std::sqrt(dot(x, x)); }

Vec scaled(const Vec& x, double s) {
  Vec y(x);
  for (auto& v : y) v *= s;
  return y;
}

Vec vec_sub(const Vec& x, const Vec& y) {
  Vec z(x);
  for (size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
  return z;
}

Vec vec_add(const Vec& x, const Vec& y) {
  Vec z(x);
  for (size_t i = 0; i < z.size(); ++i) z[i] += y[i];
  return z;
}

void normalize(Vec& x) {
  const double r = nrm2(x);
  if (r > 0.0)
    for (auto& v : x) v /= r;
}

Vec matvec(const SymMatrix& M, const Vec& x) {
  Vec y(M.n, 0.0);
  for (int i = 0; i < M.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < M.n; ++j) s += M.at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double quad_form(const SymMatrix& M, const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < M.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < M.n; ++j) row += M.at(i, j) * x[j];
    s += x[i] * row;
  }
  return s;
}

double frob_inner(const SymMatrix& A, const SymMatrix& B) {
  double s = 0.0;
  for (size_t i = 0; i < A.a.size(); ++i) s += A.a[i] * B.a[i];
  return s;
}

double frob_norm(const SymMatrix& A) { return std::sqrt(frob_inner(A, A)); }

SymMatrix mat_add(const SymMatrix& A, const SymMatrix& B) {
  SymMatrix C(A);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

SymMatrix mat_sub(const SymMatrix& A, const SymMatrix& B) {
  SymMatrix C(A);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
  return C;
}

SymMatrix mat_scaled(const SymMatrix& A, double s) {
  SymMatrix C(A);
  for (auto& v : C.a) v *= s;
  return C;
}

SymMatrix sub_outer(const SymMatrix& A, double t, const Vec& x) {
  SymMatrix C(A);
  for (int i = 0; i < C.n; ++i)
    for (int j = 0; j < C.n; ++j) C.at(i, j) -= t * x[i] * x[j];
  return C;
}

SymMatrix sym_outer(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sym_outer: length mismatch");
  const int n = static_cast<int>(a.size());
  SymMatrix M(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M.at(i, j) = 0.5 * (a[i] * b[j] + b[i] * a[j]);
  return M;
}

Subspace Subspace::full(int n) {
  Subspace W;
  W.n = n;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    W.basis.push_back(e);
  }
  return W;
}

Subspace Subspace::trivial(int n) {
  Subspace W;
  W.n = n;
  return W;
}

Vec project(const Subspace& W, const Vec& x) {
  Vec p(W.n, 0.0);
  for (const auto& b : W.basis) {
    const double c = dot(b, x);
    for (int i = 0; i < W.n; ++i) p[i] += c * b[i];
  }
  return p;
}

double angle_distance(const Subspace& W, const Vec& x) {
  Vec u(x);
  normalize(u);
  return nrm2(vec_sub(u, project(W, u)));
}

Subspace orthonormalize(int n, const std::vector<Vec>& vectors, double drop_tol) {
  Subspace W;
  W.n = n;
  for (const auto& vin : vectors) {
    Vec v(vin);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : W.basis) {
        const double c = dot(b, v);
        for (int i = 0; i < n; ++i) v[i] -= c * b[i];
      }
    const double r = nrm2(v);
    if (r > drop_tol) {
      for (auto& e : v) e /= r;
      W.basis.push_back(v);
    }
  }
  return W;
}

Subspace span_union(const Subspace& A, const Subspace& B) {
  std::vector<Vec> all(A.basis);
  all.insert(all.end(), B.basis.begin(), B.basis.end());
  return orthonormalize(A.n, all);
}

Subspace complement(const Subspace& W) {
  std::vector<Vec> all(W.basis);
  for (int i = 0; i < W.n; ++i) {
    Vec e(W.n, 0.0);
    e[i] = 1.0;
    all.push_back(e);
  }
  Subspace big = orthonormalize(W.n, all);
  Subspace C;
  C.n = W.n;
  for (size_t k = W.basis.size(); k < big.basis.size(); ++k)
    C.basis.push_back(big.basis[k]);
  return C;
}

Subspace intersect(const Subspace& A, const Subspace& B) {
  // x in A cap B iff (I - P_A)x = 0 and (I - P_B)x = 0, i.e. x lies in the
  // kernel of the psd matrix (I - P_A) + (I - P_B).
  const int n = A.n;
  SymMatrix Q(n);
  for (int i = 0; i < n; ++i) Q.at(i, i) = 2.0;
  for (const auto& b : A.basis)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Q.at(i, j) -= b[i] * b[j];
  for (const auto& b : B.basis)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Q.at(i, j) -= b[i] * b[j];
  EigDecomp d = eig(Q);
  Subspace W;
  W.n = n;
  for (int k = 0; k < n; ++k)
    if (std::abs(d.values[k]) <= 1e-10) W.basis.push_back(d.vectors[k]);
  return W;
}

Subspace hyperplane(const Vec& a) {
  const int n = static_cast<int>(a.size());
  Vec u(a);
  normalize(u);
  if (nrm2(u) == 0.0) return Subspace::full(n);
  std::vector<Vec> cand;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    const double c = dot(u, e);
    for (int j = 0; j < n; ++j) e[j] -= c * u[j];
    cand.push_back(e);
  }
  return orthonormalize(n, cand);
}

EigDecomp eig(const SymMatrix& M) {
  const int n = M.n;
  SymMatrix A(M);
  std::vector<Vec> V(n, Vec(n, 0.0));  // V[k] = k-th column accumulated
  for (int i = 0; i < n; ++i) V[i][i] = 1.0;

  const double norm0 = frob_norm(M);
  const double thresh = tol::jacobi * (norm0 > 0 ? norm0 : 1.0);

  auto offdiag = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * A.at(p, q) * A.at(p, q);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (offdiag() > thresh) {
    if (++sweep > tol::jacobi_max_sweeps)
      throw NonConvergence("jacobi eigensolver exceeded sweep limit");
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A.at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (A.at(q, q) - A.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = A.at(p, p), aqq = A.at(q, q);
        A.at(p, q) = A.at(q, p) = 0.0;
        A.at(p, p) = app - t * apq;
        A.at(q, q) = aqq + t * apq;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = A.at(r, p), arq = A.at(r, q);
            A.at(r, p) = A.at(p, r) = arp - s * (arq + tau * arp);
            A.at(r, q) = A.at(q, r) = arq + s * (arp - tau * arq);
          }
          const double vrp = V[p][r], vrq = V[q][r];
          V[p][r] = vrp - s * (vrq + tau * vrp);
          V[q][r] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return A.at(i, i) > A.at(j, j); });

  EigDecomp d;
  d.values.resize(n);
  d.vectors.resize(n);
  for (int k = 0; k < n; ++k) {
    d.values[k] = A.at(idx[k], idx[k]);
    d.vectors[k] = V[idx[k]];
  }
  return d;
}

int numerical_rank(const SymMatrix& M, double tol_scale) {
  EigDecomp d = eig(M);
  double amax = 0.0;
  for (double v : d.values) amax = std::max(amax, std::abs(v));
  const double thr = tol_scale * std::max(1.0, amax);
  int r = 0;
  for (double v : d.values)
    if (std::abs(v) > thr) ++r;
  return r;
}

Subspace range_basis(const SymMatrix& M, double tol_scale) {
  EigDecomp d = eig(M);
  double amax = 0.0;
  for (double v : d.values) amax = std::max(amax, std::abs(v));
  const double thr = tol_scale * std::max(1.0, amax);
  Subspace W;
  W.n = M.n;
  for (int k = 0; k < M.n; ++k)
    if (std::abs(d.values[k]) > thr) W.basis.push_back(d.vectors[k]);
  return W;
}

Subspace kernel_basis(const SymMatrix& M, double tol_scale) {
  EigDecomp d = eig(M);
  double amax = 0.0;
  for (double v : d.values) amax = std::max(amax, std::abs(v));
  const double thr = tol_scale * std::max(1.0, amax);
  Subspace W;
  W.n = M.n;
  for (int k = 0; k < M.n; ++k)
    if (std::abs(d.values[k]) <= thr) W.basis.push_back(d.vectors[k]);
  return W;
}

SymMatrix restrict_to(const SymMatrix& M, const Subspace& W) {
  if (W.n != M.n) throw DimensionMismatch("restrict_to: ambient dimension mismatch");
  const int k = W.dim();
  SymMatrix R(k);
  for (int i = 0; i < k; ++i) {
    const Vec Mi = matvec(M, W.basis[i]);
    for (int j = 0; j < k; ++j) R.at(i, j) = dot(Mi, W.basis[j]);
  }
  // re-symmetrize against roundoff
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const double v = 0.5 * (R.at(i, j) + R.at(j, i));
      R.at(i, j) = R.at(j, i) = v;
    }
  return R;
}

SymMatrix embed_from(const SymMatrix& A, const Subspace& W) {
  if (A.n != W.dim()) throw DimensionMismatch("embed_from: dimension mismatch");
  SymMatrix M(W.n);
  for (int p = 0; p < A.n; ++p)
    for (int q = 0; q < A.n; ++q) {
      const double v = A.at(p, q);
      if (v == 0.0) continue;
      for (int i = 0; i < W.n; ++i)
        for (int j = 0; j < W.n; ++j)
          M.at(i, j) += v * W.basis[p][i] * W.basis[q][j];
    }
  return M;
}

Vec embed_vec(const Vec& x, const Subspace& W) {
  Vec y(W.n, 0.0);
  for (size_t k = 0; k < W.basis.size(); ++k)
    for (int i = 0; i < W.n; ++i) y[i] += x[k] * W.basis[k][i];
  return y;
}

Vec restrict_vec(const Vec& x, const Subspace& W) {
  Vec y(W.dim(), 0.0);
  for (int k = 0; k < W.dim(); ++k) y[k] = dot(W.basis[k], x);
  return y;
}

double min_eigenvalue(const SymMatrix& M) {
  EigDecomp d = eig(M);
  return d.values.back();
}

bool is_psd(const SymMatrix& M, double t) {
  return min_eigenvalue(M) >= -t * (1.0 + frob_norm(M));
}

bool is_pd(const SymMatrix& M, double t) {
  return min_eigenvalue(M) > t * (1.0 + frob_norm(M));
}

bool is_psd_quick(const SymMatrix& M, double t) {
  // LDL^T without pivoting on M + shift*I, where shift is the slack is_psd
  // allows. Used as a fast pre-filter; callers confirm borderline results
  // with the eigenvalue-based test.
  const int n = M.n;
  const double scale = 1.0 + frob_norm(M);
  const double shift = t * scale;
  const double zero_thr = 1e-13 * scale;
  SymMatrix A(M);
  for (int i = 0; i < n; ++i) A.at(i, i) += shift;
  std::vector<double> d(n, 0.0);
  std::vector<Vec> L(n, Vec(n, 0.0));
  for (int j = 0; j < n; ++j) {
    double dj = A.at(j, j);
    for (int k = 0; k < j; ++k) dj -= L[j][k] * L[j][k] * d[k];
    if (dj > zero_thr) {
      d[j] = dj;
      for (int i = j + 1; i < n; ++i) {
        double v = A.at(i, j);
        for (int k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * d[k];
        L[i][j] = v / dj;
      }
    } else if (dj < -zero_thr) {
      return false;
    } else {
      // zero pivot: the column below must vanish or the matrix is indefinite
      for (int i = j + 1; i < n; ++i) {
        double v = A.at(i, j);
        for (int k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * d[k];
        if (std::abs(v) > 1e-10 * scale) return false;
      }
      d[j] = 0.0;
    }
  }
  return true;
}

double peel_max_step(const SymMatrix& X, const Vec& x) {
  const double xn = nrm2(x);
  if (xn == 0.0) throw NotInRange("peel_max_step: zero vector");
  EigDecomp d = eig(X);
  double amax = 0.0;
  for (double v : d.values) amax = std::max(amax, std::abs(v));
  const double thr = tol::rank * std::max(1.0, amax);
  double denom = 0.0;
  Vec proj(X.n, 0.0);
  for (int k = 0; k < X.n; ++k) {
    if (std::abs(d.values[k]) <= thr) continue;
    const double c = dot(d.vectors[k], x);
    denom += c * c / d.values[k];
    for (int i = 0; i < X.n; ++i) proj[i] += c * d.vectors[k][i];
  }
  if (nrm2(vec_sub(x, proj)) > 1e-8 * xn)
    throw NotInRange("peel_max_step: x not in range(X)");
  if (denom <= 0.0) throw NotInRange("peel_max_step: degenerate direction");
  return 1.0 / denom;
}

std::string format_vec(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ")";
  return os.str();
}

}  // namespace rog
