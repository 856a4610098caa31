#include "rog/witness.hpp"

#include <algorithm>
#include <cmath>

namespace rog {

namespace {

Vec cross3(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

void sign_normalize(Vec& x) {
  for (double v : x) {
    if (std::abs(v) > 1e-12) {
      if (v < 0)
        for (auto& e : x) e = -e;
      return;
    }
  }
}

bool same_line(const Vec& a, const Vec& b) {
  return 1.0 - std::abs(dot(a, b)) <= tol::angular;
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

double poly_deriv_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (size_t k = c.size(); k-- > 1;) v = v * x + c[k] * static_cast<double>(k);
  return v;
}

// stable quadratic: roots of c0 + c1 x + c2 x^2, clamping a slightly
// negative discriminant (tangential double roots)
void quadratic_roots(double c0, double c1, double c2, double clamp,
                     std::vector<double>& out) {
  if (c2 == 0.0) {
    if (c1 != 0.0) out.push_back(-c0 / c1);
    return;
  }
  double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < -clamp) return;
  disc = std::max(disc, 0.0);
  const double s = std::sqrt(disc);
  const double q = -0.5 * (c1 + (c1 >= 0 ? s : -s));
  if (q != 0.0) {
    out.push_back(q / c2);
    out.push_back(c0 / q);
  } else {
    out.push_back(0.0);
    out.push_back(0.0);
  }
}

void cubic_roots(double c0, double c1, double c2, double c3,
                 std::vector<double>& out) {
  // depressed cubic t^3 + p t + q, x = t - a2/3
  const double a2 = c2 / c3, a1 = c1 / c3, a0 = c0 / c3;
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const double shift = -a2 / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 1e-14 * (q * q + std::abs(p * p * p) + 1e-300)) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + s);
    const double v = std::cbrt(-q / 2.0 - s);
    out.push_back(u + v + shift);
  } else if (std::abs(p) <= 1e-14) {
    out.push_back(std::cbrt(-q) + shift);
  } else {
    // three real roots
    const double r = std::sqrt(-p * p * p / 27.0);
    double arg = -q / (2.0 * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg);
    const double m = 2.0 * std::sqrt(-p / 3.0);
    for (int k = 0; k < 3; ++k)
      out.push_back(m * std::cos((phi + 2.0 * 3.14159265358979323846 * k) / 3.0) +
                    shift);
  }
}

}  // namespace

std::vector<double> poly_real_roots(const std::vector<double>& coeffs) {
  std::vector<double> c(coeffs);
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return {};
  while (c.size() > 1 && std::abs(c.back()) <= 1e-13 * scale) c.pop_back();
  const int deg = static_cast<int>(c.size()) - 1;

  std::vector<double> roots;
  if (deg <= 0) return roots;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
  } else if (deg == 2) {
    quadratic_roots(c[0], c[1], c[2], 1e-12 * scale * scale, roots);
  } else if (deg == 3) {
    cubic_roots(c[0], c[1], c[2], c[3], roots);
  } else if (deg == 4) {
    // Ferrari: resolvent cubic for x^4 + a3 x^3 + a2 x^2 + a1 x + a0
    const double a3 = c[3] / c[4], a2 = c[2] / c[4], a1 = c[1] / c[4],
                 a0 = c[0] / c[4];
    std::vector<double> res_roots;
    cubic_roots(-(a1 * a1 + a0 * a3 * a3 - 4.0 * a0 * a2), a1 * a3 - 4.0 * a0,
                -a2, 1.0, res_roots);
    for (double u : res_roots) {
      double s2 = a3 * a3 / 4.0 + u - a2;
      double t2 = u * u / 4.0 - a0;
      if (s2 < -1e-10 || t2 < -1e-10) continue;
      s2 = std::max(s2, 0.0);
      t2 = std::max(t2, 0.0);
      double s = std::sqrt(s2), t = std::sqrt(t2);
      if ((s * t) * (a3 * u / 2.0 - a1) < 0.0) t = -t;
      std::vector<double> r2;
      quadratic_roots(u / 2.0 + t, a3 / 2.0 + s, 1.0, 1e-10, r2);
      quadratic_roots(u / 2.0 - t, a3 / 2.0 - s, 1.0, 1e-10, r2);
      if (!r2.empty()) {
        roots.insert(roots.end(), r2.begin(), r2.end());
        break;
      }
    }
  }

  // seeded Newton passes guard against closed-form corner cases;
  // enumeration only ever needs roots inside [-1, 1]
  for (int g = 0; g <= 40; ++g) {
    double x = -1.0 + 2.0 * g / 40.0;
    for (int it = 0; it < 25; ++it) {
      const double f = poly_eval(c, x);
      const double d = poly_deriv_eval(c, x);
      if (std::abs(d) < 1e-300) break;
      const double step = f / d;
      x -= step;
      if (std::abs(step) <= 1e-14 * (1.0 + std::abs(x))) break;
    }
    if (std::abs(x) <= 1.5 && std::abs(poly_eval(c, x)) <= 1e-9 * scale)
      roots.push_back(x);
  }

  // polish and dedupe
  std::vector<double> out;
  for (double r : roots) {
    double x = r;
    for (int it = 0; it < 10; ++it) {
      const double f = poly_eval(c, x);
      const double d = poly_deriv_eval(c, x);
      if (std::abs(d) < 1e-300) break;
      x -= f / d;
    }
    if (std::abs(poly_eval(c, x)) > std::abs(poly_eval(c, r))) x = r;
    bool dup = false;
    for (double o : out)
      if (std::abs(o - x) <= 1e-7 * (1.0 + std::abs(x))) dup = true;
    if (!dup) out.push_back(x);
  }
  return out;
}

LineSet variety_lines_3d(const SymMatrix& M1, const SymMatrix& M2) {
  if (M1.n != 3 || M2.n != 3)
    throw PreconditionViolated("variety_lines_3d: dimension must be 3");
  try {
    if (cond_i_weights(M1, M2))
      throw PreconditionViolated("variety_lines_3d: condition (i) holds");
  } catch (const DegeneratePencil&) {
    throw PreconditionViolated("variety_lines_3d: dependent pencil");
  }
  if (cond_ii(M1, M2))
    throw PreconditionViolated("variety_lines_3d: condition (ii) holds");

  const int r1 = numerical_rank(M1);
  const int r2 = numerical_rank(M2);

  std::vector<Vec> raw;

  if (r1 == 2 && r2 == 2) {
    auto f1 = rank_two_factor(M1);
    auto f2 = rank_two_factor(M2);
    if (!f1 || !f2)
      throw PreconditionViolated("variety_lines_3d: unexpected rank profile");
    const Vec* UA[2] = {&f1->a, &f1->b};
    const Vec* UB[2] = {&f2->a, &f2->b};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Vec x = cross3(*UA[i], *UB[j]);
        if (nrm2(x) > 1e-12) raw.push_back(x);
      }
  } else {
    // congruence-normalize the rank-3 matrix to Diag(1,1,-1)
    const bool use_m1 = (r1 == 3);
    SymMatrix Ma = use_m1 ? M1 : M2;
    const SymMatrix& Mb = use_m1 ? M2 : M1;
    EigDecomp d = eig(Ma);
    int pos = 0, neg = 0;
    double amax = 0.0;
    for (double v : d.values) amax = std::max(amax, std::abs(v));
    const double thr = tol::rank * std::max(1.0, amax);
    for (double v : d.values) {
      if (v > thr) ++pos;
      if (v < -thr) ++neg;
    }
    if (pos + neg != 3)
      throw PreconditionViolated("variety_lines_3d: unexpected rank profile");
    if (neg == 2) {  // signature (+,-,-): negate, same variety
      Ma = mat_scaled(Ma, -1.0);
      d = eig(Ma);
    }
    // columns ordered (+,+,-): descending sort already gives that
    std::vector<Vec> T(3);
    for (int k = 0; k < 3; ++k)
      T[k] = scaled(d.vectors[k], 1.0 / std::sqrt(std::abs(d.values[k])));

    auto tq = [&](int i, int j) {
      return dot(T[i], matvec(Mb, T[j]));
    };
    const double a = tq(0, 0), b = 0.5 * (tq(0, 1) + tq(1, 0)),
                 cc = 0.5 * (tq(0, 2) + tq(2, 0)), dd = tq(1, 1),
                 e = 0.5 * (tq(1, 2) + tq(2, 1)), f = tq(2, 2);

    // intersection with {x3 = 1}: x1 = xi, x2 = +/- sqrt(1 - xi^2), and the
    // second form gives A(xi) + x2 B(xi) = 0; eliminating x2 yields a
    // degree-4 polynomial whose real roots in [-1,1] carry the lines
    const std::vector<double> quartic = {
        (dd + f) * (dd + f) - 4.0 * e * e,
        4.0 * cc * (dd + f) - 8.0 * b * e,
        2.0 * (a - dd) * (dd + f) + 4.0 * cc * cc + 4.0 * e * e - 4.0 * b * b,
        4.0 * (a - dd) * cc + 8.0 * b * e,
        (a - dd) * (a - dd) + 4.0 * b * b};
    double cs = 0.0;
    for (double v : quartic) cs = std::max(cs, std::abs(v));

    for (double xi : poly_real_roots(quartic)) {
      if (std::abs(xi) > 1.0 + 1e-9) continue;
      xi = std::clamp(xi, -1.0, 1.0);
      const double A = a * xi * xi + dd * (1.0 - xi * xi) + 2.0 * cc * xi + f;
      const double B = 2.0 * b * xi + 2.0 * e;
      const double s2 = std::sqrt(std::max(0.0, 1.0 - xi * xi));
      std::vector<double> x2s;
      if (std::abs(B) > 1e-8 * (std::abs(A) + cs)) {
        const double x2 = -A / B;
        if (std::abs(x2 * x2 - (1.0 - xi * xi)) <= 1e-5 * (1.0 + x2 * x2))
          x2s.push_back(x2);
      } else {
        for (double sgn : {1.0, -1.0})
          if (std::abs(A + sgn * s2 * B) <= 1e-6 * (1.0 + cs)) x2s.push_back(sgn * s2);
      }
      for (double x2 : x2s) {
        Vec x(3, 0.0);
        for (int i = 0; i < 3; ++i)
          x[i] = xi * T[0][i] + x2 * T[1][i] + T[2][i];
        raw.push_back(x);
      }
    }
  }

  // polish each candidate on the original forms, then dedupe
  LineSet ls;
  for (Vec x : raw) {
    normalize(x);
    for (int it = 0; it < 30; ++it) {
      const double g1 = quad_form(M1, x), g2 = quad_form(M2, x);
      if (std::abs(g1) + std::abs(g2) <= 1e-14) break;
      const Vec j1 = scaled(matvec(M1, x), 2.0);
      const Vec j2 = scaled(matvec(M2, x), 2.0);
      const double aa = dot(j1, j1), bb = dot(j1, j2), cx = dot(j2, j2);
      const double det = aa * cx - bb * bb;
      if (det <= 1e-16 * (aa + cx) * (aa + cx)) break;
      const double y1 = (-g1 * cx + g2 * bb) / det;
      const double y2 = (-aa * g2 + bb * g1) / det;
      for (size_t i = 0; i < x.size(); ++i) x[i] += y1 * j1[i] + y2 * j2[i];
      normalize(x);
    }
    const double v1 = std::abs(quad_form(M1, x)) / (1.0 + frob_norm(M1));
    const double v2 = std::abs(quad_form(M2, x)) / (1.0 + frob_norm(M2));
    if (v1 > 1e-9 || v2 > 1e-9) continue;
    sign_normalize(x);
    bool dup = false;
    for (const auto& l : ls.lines)
      if (same_line(l, x)) dup = true;
    if (!dup) ls.lines.push_back(x);
  }
  if (ls.lines.size() > 4)
    throw VerificationFailed("variety_lines_3d: more than four lines");
  ls.complete = true;
  return ls;
}

bool verify_bundle(const SymMatrix& M1, const SymMatrix& M2,
                   WitnessBundle& bundle) {
  bool ok = true;
  const SymMatrix& X = bundle.X;
  const double xn = frob_norm(X);

  const double lmin = min_eigenvalue(X);
  bundle.residuals["psd_min_eig"] = lmin;
  if (lmin < -tol::psd * (1.0 + xn)) ok = false;

  const int r = numerical_rank(X);
  bundle.residuals["rank"] = r;
  if (r != 2) ok = false;

  const double i1 = std::abs(frob_inner(M1, X));
  const double i2 = std::abs(frob_inner(M2, X));
  bundle.residuals["inner_m1"] = i1;
  bundle.residuals["inner_m2"] = i2;
  if (i1 > tol::residual * (1.0 + frob_norm(M1) * xn)) ok = false;
  if (i2 > tol::residual * (1.0 + frob_norm(M2) * xn)) ok = false;

  const SymMatrix Xr =
      bundle.W.dim() == X.n ? X : restrict_to(X, bundle.W);
  const Subspace range = range_basis(Xr);
  double min_angle = 1e300;
  for (const auto& l : bundle.lines.lines)
    min_angle = std::min(min_angle, angle_distance(range, l));
  if (!bundle.lines.lines.empty()) {
    bundle.residuals["min_line_angle"] = min_angle;
    if (min_angle <= tol::line_avoid) ok = false;
  }
  return ok;
}

WitnessBundle witness_n2(const SymMatrix& M1, const SymMatrix& M2) {
  if (M1.n != 2 || M2.n != 2)
    throw PreconditionViolated("witness_n2: dimension must be 2");
  try {
    if (cond_i_weights(M1, M2))
      throw PreconditionViolated("witness_n2: condition (i) holds");
  } catch (const DegeneratePencil&) {
    throw PreconditionViolated("witness_n2: dependent pencil");
  }

  // X spans the 1-d orthogonal complement of {M1, M2} in S^2
  auto coords = [](const SymMatrix& M) -> Vec {
    return {M.at(0, 0), M.at(1, 1), std::sqrt(2.0) * M.at(0, 1)};
  };
  const Vec c1 = coords(M1), c2 = coords(M2);
  Vec cx = cross3(c1, c2);
  if (nrm2(cx) <= 1e-12 * (nrm2(c1) * nrm2(c2)))
    throw PreconditionViolated("witness_n2: dependent pencil");
  normalize(cx);
  SymMatrix X(2);
  X.at(0, 0) = cx[0];
  X.at(1, 1) = cx[1];
  X.at(0, 1) = X.at(1, 0) = cx[2] / std::sqrt(2.0);
  if (X.at(0, 0) + X.at(1, 1) < 0) X = mat_scaled(X, -1.0);
  if (!is_pd(X))
    throw PreconditionViolated("witness_n2: complement generator not definite");

  WitnessBundle b;
  b.X = X;
  b.W = Subspace::full(2);
  b.lines.complete = true;  // trivial variety, certified below

  // the 2-d variety of M1 is its pair of factor lines; neither may satisfy M2
  auto f1 = rank_two_factor(M1);
  if (!f1) throw PreconditionViolated("witness_n2: unexpected rank profile");
  double margin = 1e300;
  for (const Vec* v : {&f1->a, &f1->b}) {
    Vec line = {-(*v)[1], (*v)[0]};  // orthogonal in R^2
    margin = std::min(margin, std::abs(quad_form(M2, line)));
  }
  b.residuals["variety_trivial_margin"] = margin;
  if (margin <= tol::psd * (1.0 + frob_norm(M2)))
    throw PreconditionViolated("witness_n2: variety not trivial");

  if (!verify_bundle(M1, M2, b))
    throw VerificationFailed("witness_n2: bundle failed verification");
  return b;
}

WitnessBundle witness_n3(const SymMatrix& M1, const SymMatrix& M2, Rng& rng,
                         const std::optional<Vec>& w_seed) {
  if (M1.n != 3 || M2.n != 3)
    throw PreconditionViolated("witness_n3: dimension must be 3");
  LineSet lines = variety_lines_3d(M1, M2);  // re-checks both conditions

  // spans of line pairs; w must keep a margin from each (the proof only
  // needs w outside their union)
  std::vector<Vec> normals;
  for (size_t i = 0; i < lines.lines.size(); ++i)
    for (size_t j = i + 1; j < lines.lines.size(); ++j) {
      Vec nml = cross3(lines.lines[i], lines.lines[j]);
      if (nrm2(nml) > 1e-12) {
        normalize(nml);
        normals.push_back(nml);
      }
    }

  auto w_admissible = [&](const Vec& w) {
    for (const auto& nml : normals)
      if (std::abs(dot(nml, w)) <= tol::w_margin) return false;
    if (lines.lines.size() <= 1)
      for (const auto& l : lines.lines)
        if (1.0 - std::abs(dot(l, w)) <= tol::w_margin) return false;
    return true;
  };

  std::normal_distribution<double> gauss(0.0, 1.0);
  const int kMaxBundleTries = 60;
  const int kMaxWSamples = 10000;
  int w_samples = 0;

  for (int attempt = 0; attempt < kMaxBundleTries; ++attempt) {
    Vec w;
    if (w_seed) {
      w = *w_seed;
      normalize(w);
      if (nrm2(w) == 0.0) throw PreconditionViolated("witness_n3: zero w seed");
    } else {
      bool found = false;
      while (w_samples < kMaxWSamples) {
        ++w_samples;
        Vec cand(3);
        for (auto& v : cand) v = gauss(rng);
        normalize(cand);
        if (w_admissible(cand)) {
          w = cand;
          found = true;
          break;
        }
      }
      if (!found) throw SamplingFailed("witness_n3: no admissible w");
    }

    Vec z;
    try {
      z = antipodal_solve(M1, M2, w, rng);
    } catch (const SolveFailed&) {
      continue;
    }
    if (nrm2(z) <= 1e-12) continue;

    WitnessBundle b;
    b.X = mat_add(sym_outer(w, w), sym_outer(z, z));
    b.W = Subspace::full(3);
    b.lines = lines;
    b.w = w;
    b.z = z;
    b.residuals["dines_residual"] = std::hypot(
        quad_form(M1, w) + quad_form(M1, z), quad_form(M2, w) + quad_form(M2, z));
    if (verify_bundle(M1, M2, b)) return b;
  }
  throw SamplingFailed("witness_n3: no verifying bundle found");
}

WitnessBundle witness_high_dim(const SymMatrix& M1, const SymMatrix& M2,
                               Rng& rng) {
  const int n = M1.n;
  if (n < 4) throw PreconditionViolated("witness_high_dim: dimension must be >= 4");
  try {
    if (cond_i_weights(M1, M2))
      throw PreconditionViolated("witness_high_dim: condition (i) holds");
  } catch (const DegeneratePencil&) {
    throw PreconditionViolated("witness_high_dim: dependent pencil");
  }

  // image targets at 0, 120, 240 degrees certify condition (i) failing;
  // eigenvectors of a rank-3 combination certify condition (ii) failing
  std::vector<Vec> u(3);
  for (int i = 0; i < 3; ++i) {
    const double phi = 2.0 * 3.14159265358979323846 * i / 3.0;
    u[i] = dines_solve(M1, M2, {std::cos(phi), std::sin(phi)}, rng);
  }
  const auto beta = rank3_combo(M1, M2);
  const SymMatrix Mb =
      mat_add(mat_scaled(M1, beta[0]), mat_scaled(M2, beta[1]));
  EigDecomp d = eig(Mb);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(d.values[a]) > std::abs(d.values[b]);
  });
  std::vector<Vec> v(3);
  for (int i = 0; i < 3; ++i) v[i] = d.vectors[idx[i]];

  for (double mu = 0.5; mu >= tol::mu_floor; mu *= 0.5) {
    std::vector<Vec> x(3);
    for (int i = 0; i < 3; ++i)
      x[i] = vec_add(scaled(u[i], 1.0 - mu), scaled(v[i], mu));

    // (a) independence of the normalized generators
    SymMatrix G(3);
    std::vector<Vec> xh(3);
    for (int i = 0; i < 3; ++i) {
      xh[i] = x[i];
      normalize(xh[i]);
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G.at(i, j) = dot(xh[i], xh[j]);
    if (min_eigenvalue(G) <= 1e-12) continue;

    Subspace W = orthonormalize(n, x);
    if (W.dim() != 3) continue;
    const SymMatrix R1 = restrict_to(M1, W);
    const SymMatrix R2 = restrict_to(M2, W);

    // (b) restricted pair still violates condition (i)
    try {
      if (cond_i_weights(R1, R2)) continue;
    } catch (const DegeneratePencil&) {
      continue;
    }
    // (c) restricted combination keeps rank 3
    if (numerical_rank(restrict_to(Mb, W)) != 3) continue;

    WitnessBundle b3 = witness_n3(R1, R2, rng);
    WitnessBundle b;
    b.X = embed_from(b3.X, W);
    b.W = W;
    b.lines = b3.lines;
    b.w = b3.w;
    b.z = b3.z;
    b.residuals = b3.residuals;
    b.residuals["mu"] = mu;
    if (!verify_bundle(M1, M2, b))
      throw VerificationFailed("witness_high_dim: embedded bundle failed");
    return b;
  }
  throw ReductionFailed("witness_high_dim: mu floor reached");
}

}  // namespace rog
