#include "rog/cones.hpp"

#include <algorithm>
#include <cmath>

#include "rog/pencil.hpp"

namespace rog {

ConeSpec ConeSpec::from_constraints(int n, std::vector<Constraint> cs) {
  ConeSpec s;
  s.n = n;
  for (auto& c : cs)
    if (c.M.n != n) throw DimensionMismatch("constraint dimension mismatch");
  s.constraints = std::move(cs);
  return s;
}

ConeSpec ConeSpec::common_vector_spec(int n, Vec a, std::vector<Vec> bs) {
  ConeSpec s;
  s.n = n;
  if (static_cast<int>(a.size()) != n) throw DimensionMismatch("common vector dimension");
  for (auto& b : bs)
    if (static_cast<int>(b.size()) != n) throw DimensionMismatch("common vector dimension");
  s.common_vector = CommonVectorFamily{std::move(a), std::move(bs)};
  return s;
}

ConeSpec ConeSpec::three_products_spec(int n, Vec a, Vec b, Vec c, Sense sense) {
  ConeSpec s;
  s.n = n;
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(c.size()) != n)
    throw DimensionMismatch("three products dimension");
  s.three_products = ThreeProductsFamily{std::move(a), std::move(b), std::move(c), sense};
  return s;
}

ConeSpec ConeSpec::soc_slice_spec(int n, Vec c) {
  if (n < 2) throw DimensionMismatch("soc slice requires n >= 2");
  if (static_cast<int>(c.size()) != n) throw DimensionMismatch("soc slice dimension");
  ConeSpec s;
  s.n = n;
  s.soc_slice = SocSliceFamily{std::move(c)};
  return s;
}

SymMatrix soc_matrix(int n) {
  SymMatrix L(n);
  for (int i = 0; i + 1 < n; ++i) L.at(i, i) = -1.0;
  L.at(n - 1, n - 1) = 1.0;
  return L;
}

bool in_soc(const Vec& x, double t) {
  const int n = static_cast<int>(x.size());
  double head = 0.0;
  for (int i = 0; i + 1 < n; ++i) head += x[i] * x[i];
  const double slack = t * (1.0 + nrm2(x));
  return x[n - 1] >= -slack && std::sqrt(head) <= x[n - 1] + slack;
}

std::vector<Constraint> ConeSpec::generated() const {
  if (!has_family()) return constraints;
  std::vector<Constraint> out;
  if (common_vector) {
    int k = 0;
    for (const auto& b : common_vector->bs)
      out.push_back({sym_outer(common_vector->a, b), Sense::GEQ,
                     "ab" + std::to_string(++k)});
  } else if (three_products) {
    const auto& f = *three_products;
    out.push_back({sym_outer(f.a, f.b), f.sense, "ab"});
    out.push_back({sym_outer(f.a, f.c), f.sense, "ac"});
    out.push_back({sym_outer(f.b, f.c), f.sense, "bc"});
  } else if (soc_slice) {
    out.push_back({soc_matrix(n), Sense::GEQ, "L"});
  }
  return out;
}

namespace {

// violation of a single scalar constraint value v (>= 0 or == 0)
double violation(double v, Sense s) {
  return s == Sense::EQ ? std::abs(v) : std::max(0.0, -v);
}

}  // namespace

MembershipReport member(const ConeSpec& spec, const SymMatrix& X, double t) {
  if (X.n != spec.n) throw DimensionMismatch("member: dimension mismatch");
  MembershipReport rep;
  const double xnorm = frob_norm(X);
  const double slack = t * (1.0 + xnorm);

  double worst = 0.0;
  const double lmin = min_eigenvalue(X);
  worst = std::max(worst, -lmin);

  const auto cs = spec.generated();
  for (size_t i = 0; i < cs.size(); ++i) {
    const double v = frob_inner(cs[i].M, X);
    const double ctol = t * (1.0 + frob_norm(cs[i].M) * std::max(1.0, xnorm));
    worst = std::max(worst, violation(v, cs[i].sense));
    if (std::abs(v) <= ctol) rep.tight_set.push_back(static_cast<int>(i));
  }
  if (spec.soc_slice) {
    // the conic part: Xc in L^n, tracked as an extra pseudo-constraint
    const Vec y = matvec(X, spec.soc_slice->c);
    const int n = spec.n;
    double head = 0.0;
    for (int i = 0; i + 1 < n; ++i) head += y[i] * y[i];
    const double soc_margin = y[n - 1] - std::sqrt(head);
    worst = std::max(worst, -soc_margin);
    if (std::abs(soc_margin) <= t * (1.0 + nrm2(y)))
      rep.tight_set.push_back(static_cast<int>(cs.size()));
  }
  rep.worst_violation = worst;
  rep.feasible = worst <= slack;
  return rep;
}

bool envelope_member(const ConeSpec& spec, const SymMatrix& X, const Vec& x,
                     double t) {
  MembershipReport rep = member(spec, X, std::max(t, tol::psd));
  if (!rep.feasible) throw InfeasibleBase("envelope_member: X not in the cone");

  for (const auto& c : spec.generated()) {
    const double f = quad_form(c.M, x);
    const double scale = t * (1.0 + frob_norm(c.M) * dot(x, x));
    if (c.sense == Sense::EQ) {
      if (std::abs(f) > scale) return false;
    } else {
      const double s = frob_inner(c.M, X);
      if (std::abs(f) > s + scale) return false;
    }
  }
  if (spec.soc_slice) {
    // The slice is S({L} u {Sym(cb^T): b in L^n}). The envelope condition for
    // the infinite part is |c^T x| |b^T x| <= b^T X c for all b in L^n, which
    // is equivalent to Xc +/- (c^T x) x in L^n.
    const Vec& c = spec.soc_slice->c;
    const Vec y = matvec(X, c);
    const double cx = dot(c, x);
    if (!in_soc(vec_add(y, scaled(x, cx)), t)) return false;
    if (!in_soc(vec_sub(y, scaled(x, cx)), t)) return false;
  }
  return true;
}

bool variety_member(const ConeSpec& spec, const Vec& x, double t) {
  const double x2 = dot(x, x);
  for (const auto& c : spec.generated()) {
    const double f = quad_form(c.M, x);
    if (std::abs(f) > t * (1.0 + frob_norm(c.M) * x2)) return false;
  }
  if (spec.soc_slice) {
    // N = {x : c^T x = 0, x^T L x = 0}; the L constraint is in generated().
    const double cx = dot(spec.soc_slice->c, x);
    if (std::abs(cx) > t * (1.0 + nrm2(spec.soc_slice->c) * nrm2(x))) return false;
  }
  return true;
}

std::pair<Subspace, ConeSpec> facial_reduce(const ConeSpec& spec) {
  if (spec.has_family())
    throw UntaggedSpec("facial_reduce: finite EQ constraint lists only");
  for (const auto& c : spec.constraints)
    if (c.sense != Sense::EQ)
      throw PreconditionViolated("facial_reduce: EQ constraints only");

  const int n = spec.n;
  Subspace W = Subspace::trivial(n);          // forced-zero space, original coords
  Subspace residual = Subspace::full(n);      // current working space
  std::vector<SymMatrix> mats;
  for (const auto& c : spec.constraints) mats.push_back(c.M);

  Rng rng(0);  // cond_i's refuter path is never taken here; arc scan is deterministic

  auto nonzero = [](const SymMatrix& M) {
    return frob_norm(M) > tol::degenerate;
  };

  bool progress = true;
  while (progress && residual.dim() > 0) {
    progress = false;
    SymMatrix psd_elem(0);
    bool found = false;

    for (size_t i = 0; i < mats.size() && !found; ++i) {
      if (!nonzero(mats[i])) continue;
      if (is_psd(mats[i])) {
        psd_elem = mats[i];
        found = true;
      } else if (is_psd(mat_scaled(mats[i], -1.0))) {
        psd_elem = mat_scaled(mats[i], -1.0);
        found = true;
      }
    }
    for (size_t i = 0; i < mats.size() && !found; ++i) {
      for (size_t j = i + 1; j < mats.size() && !found; ++j) {
        if (!nonzero(mats[i]) || !nonzero(mats[j])) continue;
        if (linearly_dependent(mats[i], mats[j])) continue;
        CondIResult r = cond_i(mats[i], mats[j], rng);
        if (r.holds) {
          SymMatrix combo = mat_add(mat_scaled(mats[i], r.weights[0]),
                                    mat_scaled(mats[j], r.weights[1]));
          if (is_psd(combo) && nonzero(combo)) {
            psd_elem = combo;
            found = true;
          }
        }
      }
    }

    if (found) {
      // range of the psd element is forced to zero; restrict to its kernel
      Subspace rng_elem = range_basis(psd_elem);
      if (rng_elem.dim() == 0) break;
      Subspace forced;  // embed into original coordinates
      forced.n = n;
      for (const auto& v : rng_elem.basis) forced.basis.push_back(embed_vec(v, residual));
      W = span_union(W, forced);
      Subspace keep = kernel_basis(psd_elem);
      std::vector<SymMatrix> next;
      for (const auto& M : mats) next.push_back(restrict_to(M, keep));
      mats = std::move(next);
      // compose: new residual basis in original coordinates
      Subspace new_res;
      new_res.n = n;
      for (const auto& v : keep.basis) new_res.basis.push_back(embed_vec(v, residual));
      residual = new_res;
      progress = true;
    }
  }

  ConeSpec out;
  out.n = residual.dim();
  for (size_t i = 0; i < mats.size(); ++i)
    out.constraints.push_back({mats[i], Sense::EQ, spec.constraints[i].name});
  return {W, out};
}

std::pair<Subspace, ConeSpec> span_restrict(const ConeSpec& spec) {
  std::vector<Vec> gens;
  for (const auto& c : spec.generated()) {
    Subspace r = range_basis(c.M);
    gens.insert(gens.end(), r.basis.begin(), r.basis.end());
  }
  Subspace W = orthonormalize(spec.n, gens);
  ConeSpec out;
  out.n = W.dim();
  for (const auto& c : spec.generated())
    out.constraints.push_back({restrict_to(c.M, W), c.sense, c.name});
  return {W, out};
}

}  // namespace rog
