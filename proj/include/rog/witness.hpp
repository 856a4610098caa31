#ifndef ROG_WITNESS_HPP
#define ROG_WITNESS_HPP

#include <map>
#include <optional>
#include <string>

#include "rog/linalg.hpp"
#include "rog/pencil.hpp"

namespace rog {

// Lines of the variety {x : x^T M1 x = x^T M2 x = 0}, each a unit vector
// sign-normalized so its first nonzero coordinate is positive.
struct LineSet {
  std::vector<Vec> lines;
  bool complete = false;
};

struct WitnessBundle {
  SymMatrix X;              // rank-two element annihilating both matrices
  Subspace W;               // reduction subspace (full space for n <= 3)
  LineSet lines;            // variety lines of the restricted pair
  Vec w, z;                 // generating vectors, restricted coordinates
  std::map<std::string, double> residuals;
};

// Enumerates the (at most four) variety lines in dimension 3, assuming
// neither condition of the two-LMI characterization holds.
LineSet variety_lines_3d(const SymMatrix& M1, const SymMatrix& M2);

WitnessBundle witness_n2(const SymMatrix& M1, const SymMatrix& M2);

// Builds X = w w^T + z z^T with z solving the antipodal image problem. An
// optional w_seed pins the generating vector w (normalized before use).
WitnessBundle witness_n3(const SymMatrix& M1, const SymMatrix& M2, Rng& rng,
                         const std::optional<Vec>& w_seed = std::nullopt);

// Reduces an n >= 4 pair violating condition (i) to a 3-dimensional witness
// on a certified subspace W.
WitnessBundle witness_high_dim(const SymMatrix& M1, const SymMatrix& M2,
                               Rng& rng);

// Recomputes all bundle invariants; returns false (with residuals updated)
// when any check fails.
bool verify_bundle(const SymMatrix& M1, const SymMatrix& M2,
                   WitnessBundle& bundle);

// Real roots of a polynomial with coefficients c[0] + c[1] x + ... (closed
// form plus seeded Newton passes). Exposed for tests.
std::vector<double> poly_real_roots(const std::vector<double>& coeffs);

}  // namespace rog

#endif
