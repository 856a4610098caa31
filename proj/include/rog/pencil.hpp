#ifndef ROG_PENCIL_HPP
#define ROG_PENCIL_HPP

#include <array>
#include <optional>
#include <random>
#include <utility>

#include "rog/linalg.hpp"

namespace rog {

using Rng = std::mt19937_64;

struct CondIResult {
  bool holds = false;
  bool marginal = false;           // max min-eigenvalue within psd tolerance of 0
  std::array<double, 2> weights{};  // unit norm when holds
  std::vector<Vec> refuter;        // three vectors whose images positively span R^2
};

struct RankTwoFactors {
  Vec a, b;      // unit vectors
  double scale;  // eta with eta*Sym(a b^T) = M
};

// Decides whether some nonzero combination a1*M1 + a2*M2 is psd, by scanning
// the angular trace of the pencil. When it fails, emits three refuter vectors
// built with dines_solve whose image vectors positively span R^2.
// Throws DegeneratePencil when M1, M2 are linearly dependent.
CondIResult cond_i(const SymMatrix& M1, const SymMatrix& M2, Rng& rng);

// Decision-only variant: unit weights of a psd combination, or nullopt.
// Second member of the pair is the marginal flag.
std::optional<std::pair<std::array<double, 2>, bool>> cond_i_weights(
    const SymMatrix& M1, const SymMatrix& M2);

// Returns true iff M1, M2 are linearly dependent (including zero matrices)
// within the relative tolerance used by cond_i's degeneracy guard.
bool linearly_dependent(const SymMatrix& M1, const SymMatrix& M2,
                        double t = tol::degenerate);

// Factors an indefinite rank-two matrix as eta*Sym(a b^T); nullopt otherwise.
std::optional<RankTwoFactors> rank_two_factor(const SymMatrix& M);

struct CondIITriple {
  Vec a, b, c;  // M1 = Sym(a c^T), M2 = Sym(b c^T)
};

// Detects the shared-factor structure M1 = Sym(a c^T), M2 = Sym(b c^T).
std::optional<CondIITriple> cond_ii(const SymMatrix& M1, const SymMatrix& M2);

// Finds x with (x^T M1 x, x^T M2 x) = target, assuming no nonzero psd pencil
// combination exists. Gauss-Newton with random restarts, then a minimum-norm
// polish along the solution manifold. Throws SolveFailed after 200 restarts.
Vec dines_solve(const SymMatrix& M1, const SymMatrix& M2,
                const std::array<double, 2>& target, Rng& rng,
                int max_restarts = 200);

// dines_solve at the negated image of w.
Vec antipodal_solve(const SymMatrix& M1, const SymMatrix& M2, const Vec& w,
                    Rng& rng);

// First grid combination with numerical rank >= 3. Throws NotFound.
std::array<double, 2> rank3_combo(const SymMatrix& M1, const SymMatrix& M2);

}  // namespace rog

#endif
