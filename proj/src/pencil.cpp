#include "rog/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

namespace rog {

namespace {

constexpr double kPi = 3.14159265358979323846;

SymMatrix pencil_at(const SymMatrix& M1, const SymMatrix& M2, double theta) {
  return mat_add(mat_scaled(M1, std::cos(theta)), mat_scaled(M2, std::sin(theta)));
}

// min eigenvalue relative to the psd slack at that pencil point
double psd_margin(const SymMatrix& C) {
  return min_eigenvalue(C) + tol::psd * (1.0 + frob_norm(C));
}

double golden_max(const std::function<double(double)>& f, double a, double b,
                  int iters) {
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

}  // namespace

bool linearly_dependent(const SymMatrix& M1, const SymMatrix& M2, double t) {
  const double n1 = frob_norm(M1), n2 = frob_norm(M2);
  if (n1 <= t * (1.0 + n2) || n2 <= t * (1.0 + n1)) return true;
  const double c = frob_inner(M1, M2) / (n1 * n1);
  return frob_norm(mat_sub(M2, mat_scaled(M1, c))) <= t * (1.0 + n2);
}

std::optional<std::pair<std::array<double, 2>, bool>> cond_i_weights(
    const SymMatrix& M1, const SymMatrix& M2) {
  if (M1.n != M2.n) throw DimensionMismatch("cond_i: dimension mismatch");
  if (linearly_dependent(M1, M2))
    throw DegeneratePencil("cond_i: linearly dependent pencil");

  const int N = 1024;
  std::vector<char> psd(N, 0);
  bool any = false;
  for (int k = 0; k < N; ++k) {
    const double th = 2.0 * kPi * k / N;
    psd[k] = is_psd_quick(pencil_at(M1, M2, th), tol::psd) ? 1 : 0;
    any = any || psd[k];
  }

  std::optional<std::pair<std::array<double, 2>, bool>> out;

  auto accept = [&](double theta) -> bool {
    SymMatrix C = pencil_at(M1, M2, theta);
    if (!is_psd(C)) return false;
    const bool marginal = min_eigenvalue(C) < tol::psd * (1.0 + frob_norm(C));
    out = {{std::cos(theta), std::sin(theta)}, marginal};
    return true;
  };

  if (any) {
    // the psd weight set is a convex cone, so its angular trace is one arc;
    // take the midpoint of the longest circular run of psd grid points
    int best_start = 0, best_len = 0;
    int k = 0;
    while (k < N) {
      if (!psd[k]) {
        ++k;
        continue;
      }
      int len = 0, s = k;
      while (len < N && psd[(s + len) % N]) ++len;
      if (len > best_len) {
        best_len = len;
        best_start = s;
      }
      k = s + len;
    }
    const double theta =
        2.0 * kPi * (best_start + 0.5 * (best_len - 1)) / N;
    if (accept(theta)) return out;
    for (int j = 0; j < best_len; ++j)
      if (accept(2.0 * kPi * ((best_start + j) % N) / N)) return out;
  }

  // No grid point certain: the arc may be thin or empty. Refine the margin
  // maximum wherever the Lipschitz bound allows it to reach zero.
  {
    const int M = 256;
    const double h = kPi / M;  // half spacing of the coarse grid
    const double lip = frob_norm(M1) + frob_norm(M2);
    std::vector<double> marg(M);
    double best = -1e300;
    int best_k = 0;
    for (int k = 0; k < M; ++k) {
      marg[k] = psd_margin(pencil_at(M1, M2, 2.0 * kPi * k / M));
      if (marg[k] > best) {
        best = marg[k];
        best_k = k;
      }
    }
    if (best + h * lip >= 0.0) {
      auto f = [&](double th) { return psd_margin(pencil_at(M1, M2, th)); };
      for (int cand = 0; cand < 3; ++cand) {
        int k = best_k;
        if (cand > 0) {
          // next best local max not adjacent to previous picks
          double b2 = -1e300;
          k = -1;
          for (int i = 0; i < M; ++i) {
            int d = std::abs(i - best_k);
            d = std::min(d, M - d);
            if (d <= 2) continue;
            if (marg[i] > b2) {
              b2 = marg[i];
              k = i;
            }
          }
          if (k < 0 || b2 + h * lip < 0.0) break;
        }
        const double c = 2.0 * kPi * k / M;
        const double theta = golden_max(f, c - 2.0 * h, c + 2.0 * h, 60);
        if (accept(theta)) return out;
      }
    }
  }

  return std::nullopt;
}

CondIResult cond_i(const SymMatrix& M1, const SymMatrix& M2, Rng& rng) {
  CondIResult res;
  auto w = cond_i_weights(M1, M2);
  if (w) {
    res.holds = true;
    res.weights = w->first;
    res.marginal = w->second;
    return res;
  }
  res.holds = false;
  for (int i = 0; i < 3; ++i) {
    const double phi = 2.0 * kPi * i / 3.0;
    res.refuter.push_back(
        dines_solve(M1, M2, {std::cos(phi), std::sin(phi)}, rng));
  }
  return res;
}

std::optional<RankTwoFactors> rank_two_factor(const SymMatrix& M) {
  EigDecomp d = eig(M);
  double amax = 0.0;
  for (double v : d.values) amax = std::max(amax, std::abs(v));
  const double thr = tol::rank * std::max(1.0, amax);
  int r = 0;
  for (double v : d.values)
    if (std::abs(v) > thr) ++r;
  if (r != 2) return std::nullopt;
  const double lp = d.values.front();
  const double ln = d.values.back();
  if (lp <= thr || ln >= -thr) return std::nullopt;  // needs one of each sign

  const Vec& vp = d.vectors.front();
  const Vec& vn = d.vectors.back();
  const double sp = std::sqrt(lp), sn = std::sqrt(-ln);
  Vec a(M.n), b(M.n);
  for (int i = 0; i < M.n; ++i) {
    a[i] = sp * vp[i] + sn * vn[i];
    b[i] = sp * vp[i] - sn * vn[i];
  }
  RankTwoFactors f;
  f.scale = nrm2(a) * nrm2(b);
  normalize(a);
  normalize(b);
  f.a = a;
  f.b = b;
  return f;
}

namespace {

// factor pairs (u, v, eta) with M = eta*Sym(u v^T); empty when not factorable
struct LowRankFactor {
  bool zero = false;
  Vec u, v;
  double eta = 0.0;
};

std::optional<LowRankFactor> low_rank_factor(const SymMatrix& M) {
  LowRankFactor f;
  const double nm = frob_norm(M);
  if (nm <= tol::degenerate) {
    f.zero = true;
    return f;
  }
  EigDecomp d = eig(M);
  double amax = 0.0;
  for (double v : d.values) amax = std::max(amax, std::abs(v));
  const double thr = tol::rank * std::max(1.0, amax);
  int r = 0;
  for (double v : d.values)
    if (std::abs(v) > thr) ++r;
  if (r == 1) {
    // M = lambda v v^T = Sym((lambda v) v^T)
    const int k = std::abs(d.values.front()) > std::abs(d.values.back()) ? 0 : M.n - 1;
    f.u = d.vectors[k];
    f.v = d.vectors[k];
    f.eta = d.values[k];
    return f;
  }
  if (auto rt = rank_two_factor(M)) {
    f.u = rt->a;
    f.v = rt->b;
    f.eta = rt->scale;
    return f;
  }
  return std::nullopt;
}

bool collinear(const Vec& x, const Vec& y) {
  const double c = std::abs(dot(x, y)) / (nrm2(x) * nrm2(y));
  return 1.0 - c <= tol::angular;
}

}  // namespace

std::optional<CondIITriple> cond_ii(const SymMatrix& M1, const SymMatrix& M2) {
  if (M1.n != M2.n) throw DimensionMismatch("cond_ii: dimension mismatch");
  const int n = M1.n;
  auto f1 = low_rank_factor(M1);
  auto f2 = low_rank_factor(M2);
  if (!f1 || !f2) return std::nullopt;

  auto verify = [&](const CondIITriple& t) {
    const double e1 = frob_norm(mat_sub(sym_outer(t.a, t.c), M1));
    const double e2 = frob_norm(mat_sub(sym_outer(t.b, t.c), M2));
    return e1 <= tol::recon * (1.0 + frob_norm(M1)) &&
           e2 <= tol::recon * (1.0 + frob_norm(M2));
  };

  if (f1->zero && f2->zero) {
    CondIITriple t;
    t.a = Vec(n, 0.0);
    t.b = Vec(n, 0.0);
    t.c = Vec(n, 0.0);
    t.c[0] = 1.0;
    return t;
  }
  if (f1->zero || f2->zero) {
    const auto& g = f1->zero ? *f2 : *f1;
    CondIITriple t;
    t.c = g.v;
    Vec other = scaled(g.u, g.eta);
    t.a = f1->zero ? Vec(n, 0.0) : other;
    t.b = f1->zero ? other : Vec(n, 0.0);
    if (verify(t)) return t;
    return std::nullopt;
  }

  const Vec* c1s[2] = {&f1->u, &f1->v};
  const Vec* c2s[2] = {&f2->u, &f2->v};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (!collinear(*c1s[i], *c2s[j])) continue;
      CondIITriple t;
      t.c = *c1s[i];
      const Vec& o1 = *c1s[1 - i];
      const Vec& o2 = *c2s[1 - j];
      const double sgn = dot(*c1s[i], *c2s[j]) >= 0 ? 1.0 : -1.0;
      t.a = scaled(o1, f1->eta);
      t.b = scaled(o2, f2->eta * sgn);
      if (verify(t)) return t;
    }
  return std::nullopt;
}

namespace {

struct GnWork {
  const SymMatrix& M1;
  const SymMatrix& M2;
  std::array<double, 2> target;

  std::array<double, 2> residual(const Vec& x) const {
    return {quad_form(M1, x) - target[0], quad_form(M2, x) - target[1]};
  }
  static double rnorm(const std::array<double, 2>& r) {
    return std::sqrt(r[0] * r[0] + r[1] * r[1]);
  }

  // one damped Gauss-Newton step; returns new residual norm
  double step(Vec& x) const {
    const auto r = residual(x);
    const double rn = rnorm(r);
    const Vec g1 = scaled(matvec(M1, x), 2.0);
    const Vec g2 = scaled(matvec(M2, x), 2.0);
    const double a = dot(g1, g1), b = dot(g1, g2), c = dot(g2, g2);
    const double lam = 1e-12 * (a + c) + 1e-300;
    const double det = (a + lam) * (c + lam) - b * b;
    if (det <= 0.0) return rn;
    const double y1 = (-(r[0]) * (c + lam) - (-(r[1])) * b) / det;
    const double y2 = ((a + lam) * (-(r[1])) - b * (-(r[0]))) / det;
    Vec dx(x.size());
    for (size_t i = 0; i < x.size(); ++i) dx[i] = y1 * g1[i] + y2 * g2[i];
    double s = 1.0;
    for (int t = 0; t < 30; ++t) {
      Vec xn = vec_add(x, scaled(dx, s));
      if (rnorm(residual(xn)) < rn) {
        x = xn;
        return rnorm(residual(x));
      }
      s *= 0.5;
    }
    return rn;
  }

  bool solve_from(Vec& x, double tol_res, int iters = 120) const {
    double prev = rnorm(residual(x));
    for (int i = 0; i < iters; ++i) {
      const double rn = step(x);
      if (rn <= tol_res) return true;
      if (rn >= prev * (1.0 - 1e-12)) return false;  // stalled
      prev = rn;
    }
    return rnorm(residual(x)) <= tol_res;
  }

  // projected-gradient minimum-norm polish along the solution manifold;
  // makes the returned representative canonical per connected component
  void polish(Vec& x, double tol_res) const {
    for (int it = 0; it < 300; ++it) {
      const Vec g1 = scaled(matvec(M1, x), 2.0);
      const Vec g2 = scaled(matvec(M2, x), 2.0);
      const double a = dot(g1, g1), b = dot(g1, g2), c = dot(g2, g2);
      const double det = a * c - b * b;
      Vec xt(x);
      if (det > 1e-14 * (a + c) * (a + c)) {
        const double j1 = dot(g1, x), j2 = dot(g2, x);
        const double y1 = (j1 * c - j2 * b) / det;
        const double y2 = (a * j2 - b * j1) / det;
        for (size_t i = 0; i < x.size(); ++i)
          xt[i] = x[i] - y1 * g1[i] - y2 * g2[i];
      }
      const double tn = nrm2(xt);
      if (tn <= 1e-11 * (1.0 + nrm2(x))) return;
      bool moved = false;
      double s = 1.0;
      while (s >= 1e-8) {
        Vec xc = vec_sub(x, scaled(xt, s));
        bool ok = solve_from(xc, tol_res * 0.5, 30);
        if (ok && nrm2(xc) < nrm2(x) * (1.0 - 1e-15)) {
          x = xc;
          moved = true;
          break;
        }
        s *= 0.5;
      }
      if (!moved) return;
    }
  }
};

}  // namespace

Vec dines_solve(const SymMatrix& M1, const SymMatrix& M2,
                const std::array<double, 2>& target, Rng& rng,
                int max_restarts) {
  if (M1.n != M2.n) throw DimensionMismatch("dines_solve: dimension mismatch");
  const int n = M1.n;
  const double tmag = std::sqrt(target[0] * target[0] + target[1] * target[1]);
  if (tmag == 0.0) return Vec(n, 0.0);

  GnWork work{M1, M2, target};
  const double tol_res = 0.5 * tol::residual * (1.0 + tmag);
  const double msc = std::max(frob_norm(M1), frob_norm(M2));
  const double x_scale = std::sqrt(tmag / std::max(msc, 1e-30)) + 1e-6;

  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int restart = 0; restart < max_restarts; ++restart) {
    Vec x(n);
    for (auto& v : x) v = gauss(rng);
    normalize(x);
    for (auto& v : x) v *= x_scale * (1.0 + restart % 7);
    if (work.solve_from(x, tol_res)) {
      work.polish(x, tol_res);
      if (GnWork::rnorm(work.residual(x)) <= 2.0 * tol_res) return x;
    }
  }
  throw SolveFailed("dines_solve: no solution after restarts");
}

Vec antipodal_solve(const SymMatrix& M1, const SymMatrix& M2, const Vec& w,
                    Rng& rng) {
  const double f1 = quad_form(M1, w);
  const double f2 = quad_form(M2, w);
  const double w2 = dot(w, w);
  const double s1 = 1e-12 * (1.0 + frob_norm(M1) * w2);
  const double s2 = 1e-12 * (1.0 + frob_norm(M2) * w2);
  if (std::abs(f1) <= s1 && std::abs(f2) <= s2)
    return Vec(w.size(), 0.0);
  return dines_solve(M1, M2, {-f1, -f2}, rng);
}

std::array<double, 2> rank3_combo(const SymMatrix& M1, const SymMatrix& M2) {
  if (numerical_rank(M1) >= 3) return {1.0, 0.0};
  if (numerical_rank(M2) >= 3) return {0.0, 1.0};
  for (int k = 0; k < 64; ++k) {
    const double th = kPi * k / 64.0;
    const SymMatrix C = pencil_at(M1, M2, th);
    if (numerical_rank(C) >= 3) return {std::cos(th), std::sin(th)};
  }
  throw NotFound("rank3_combo: no combination of rank >= 3");
}

}  // namespace rog
