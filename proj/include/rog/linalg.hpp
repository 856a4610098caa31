#ifndef ROG_LINALG_HPP
#define ROG_LINALG_HPP

#include <string>
#include <vector>

#include "rog/errors.hpp"

namespace rog {

using Vec = std::vector<double>;

// Tolerance ledger. All tolerances are relative; matrix-valued checks are
// scaled by (1 + ||.||_F).
namespace tol {
constexpr double rank = 1e-9;
constexpr double psd = 1e-9;
constexpr double orth = 1e-12;
constexpr double jacobi = 1e-12;
constexpr int jacobi_max_sweeps = 100;
constexpr double recon = 1e-8;
constexpr double residual = 1e-8;
constexpr double atom_feas = 1e-7;
constexpr double angular = 1e-8;
constexpr double line_avoid = 1e-6;
constexpr double w_margin = 1e-3;
constexpr double mu_floor = 1e-6;
constexpr double degenerate = 1e-10;
}  // namespace tol

constexpr int kMaxDim = 64;

// Dense real symmetric matrix, stored fully, symmetrized on construction.
struct SymMatrix {
  int n = 0;
  std::vector<double> a;  // row-major, n*n

  SymMatrix() = default;
  explicit SymMatrix(int dim);

  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static SymMatrix zero(int n);
  static SymMatrix identity(int n);
  static SymMatrix diag(const Vec& d);
  // Builds from arbitrary square data, averaging (i,j) and (j,i).
  static SymMatrix from_rows(const std::vector<Vec>& rows);
};

// Basic vector ops.
double dot(const Vec& x, const Vec& y);
double nrm2(const Vec& x);
Vec scaled(const Vec& x, double s);
Vec vec_sub(const Vec& x, const Vec& y);
Vec vec_add(const Vec& x, const Vec& y);
void normalize(Vec& x);

Vec matvec(const SymMatrix& M, const Vec& x);
double quad_form(const SymMatrix& M, const Vec& x);           // x^T M x
double frob_inner(const SymMatrix& A, const SymMatrix& B);    // <A,B>
double frob_norm(const SymMatrix& A);
SymMatrix mat_add(const SymMatrix& A, const SymMatrix& B);
SymMatrix mat_sub(const SymMatrix& A, const SymMatrix& B);
SymMatrix mat_scaled(const SymMatrix& A, double s);
// A - t * x x^T
SymMatrix sub_outer(const SymMatrix& A, double t, const Vec& x);

// (a b^T + b a^T) / 2
SymMatrix sym_outer(const Vec& a, const Vec& b);

// Subspace of R^n given by an orthonormal basis (k >= 0 vectors).
struct Subspace {
  int n = 0;
  std::vector<Vec> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  static Subspace full(int n);
  static Subspace trivial(int n);
};

// Projection of x onto the subspace.
Vec project(const Subspace& W, const Vec& x);
// Distance from unit direction x to the subspace, as sin of the principal
// angle: ||x - P_W x|| with x normalized.
double angle_distance(const Subspace& W, const Vec& x);
// Modified Gram-Schmidt; drops vectors with residual norm <= drop_tol.
Subspace orthonormalize(int n, const std::vector<Vec>& vectors,
                        double drop_tol = 1e-10);
Subspace span_union(const Subspace& A, const Subspace& B);
Subspace complement(const Subspace& W);
// Intersection of two subspaces (kernel of the sum of complement projectors).
Subspace intersect(const Subspace& A, const Subspace& B);
// Subspace orthogonal to a single vector.
Subspace hyperplane(const Vec& a);

struct EigDecomp {
  Vec values;                    // sorted descending
  std::vector<Vec> vectors;      // vectors[k] is the eigenvector for values[k]
};

// Cyclic Jacobi eigendecomposition. Throws NonConvergence after 100 sweeps.
EigDecomp eig(const SymMatrix& M);

int numerical_rank(const SymMatrix& M, double tol_scale = tol::rank);
Subspace range_basis(const SymMatrix& M, double tol_scale = tol::rank);
Subspace kernel_basis(const SymMatrix& M, double tol_scale = tol::rank);

// U^T M U for the basis U of W.
SymMatrix restrict_to(const SymMatrix& M, const Subspace& W);
// U A U^T: embeds a dim(W) x dim(W) matrix back into R^n.
SymMatrix embed_from(const SymMatrix& A, const Subspace& W);
Vec embed_vec(const Vec& x, const Subspace& W);
Vec restrict_vec(const Vec& x, const Subspace& W);

bool is_psd(const SymMatrix& M, double t = tol::psd);
bool is_pd(const SymMatrix& M, double t = tol::psd);
double min_eigenvalue(const SymMatrix& M);
// Fast boolean psd test via LDL^T; equivalent to is_psd up to tolerance.
bool is_psd_quick(const SymMatrix& M, double t = tol::psd);

// Largest t with X - t x x^T psd, for x in range(X); equals 1/(x^T X^+ x).
// Throws NotInRange if the range-projection residual exceeds 1e-8 ||x||.
double peel_max_step(const SymMatrix& X, const Vec& x);

std::string format_vec(const Vec& x);

}  // namespace rog

#endif
