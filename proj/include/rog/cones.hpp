#ifndef ROG_CONES_HPP
#define ROG_CONES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rog/linalg.hpp"

namespace rog {

enum class Sense { GEQ, EQ };

struct Constraint {
  SymMatrix M;
  Sense sense = Sense::GEQ;
  std::string name;
};

// Structured constraint families with on-demand constraint generation.
// CommonVector encodes {Sym(a b^T) : b in Bs} (all GEQ).
struct CommonVectorFamily {
  Vec a;
  std::vector<Vec> bs;
};

// ThreeProducts encodes {Sym(ab^T), Sym(ac^T), Sym(bc^T)}.
struct ThreeProductsFamily {
  Vec a, b, c;
  Sense sense = Sense::GEQ;
};

// SocSlice encodes {X : Xc in L^n, <L,X> >= 0} with L = Diag(-1,..,-1,1).
struct SocSliceFamily {
  Vec c;
};

struct ConeSpec {
  int n = 0;
  std::vector<Constraint> constraints;
  std::optional<CommonVectorFamily> common_vector;
  std::optional<ThreeProductsFamily> three_products;
  std::optional<SocSliceFamily> soc_slice;

  bool has_family() const {
    return common_vector || three_products || soc_slice;
  }

  static ConeSpec from_constraints(int n, std::vector<Constraint> cs);
  static ConeSpec common_vector_spec(int n, Vec a, std::vector<Vec> bs);
  static ConeSpec three_products_spec(int n, Vec a, Vec b, Vec c,
                                      Sense sense = Sense::GEQ);
  static ConeSpec soc_slice_spec(int n, Vec c);

  // Finite list of generated constraints. For SocSlice returns {L}; the conic
  // part Xc in L^n is handled separately by member/envelope/variety.
  std::vector<Constraint> generated() const;
};

SymMatrix soc_matrix(int n);  // Diag(-1,...,-1,1)
bool in_soc(const Vec& x, double t = tol::psd);

struct MembershipReport {
  bool feasible = false;
  double worst_violation = 0.0;
  std::vector<int> tight_set;
};

MembershipReport member(const ConeSpec& spec, const SymMatrix& X,
                        double t = tol::psd);

// True iff |x^T M x| <= <M,X> + tol for GEQ constraints and |x^T M x| <= tol
// for EQ constraints. Throws InfeasibleBase when X is not in the cone.
bool envelope_member(const ConeSpec& spec, const SymMatrix& X, const Vec& x,
                     double t = tol::psd);

bool variety_member(const ConeSpec& spec, const Vec& x, double t = tol::psd);

// Facial reduction for EQ-only specs: repeatedly removes the range of a
// nonzero psd element found among single constraints and pairs. Returns the
// forced-zero subspace W (in the original coordinates) and the residual spec
// on W^perp.
std::pair<Subspace, ConeSpec> facial_reduce(const ConeSpec& spec);

// W = span of the ranges of all constraint matrices; returns the spec
// restricted to W.
std::pair<Subspace, ConeSpec> span_restrict(const ConeSpec& spec);

}  // namespace rog

#endif
