#ifndef OPAL_KERNEL_HPP
#define OPAL_KERNEL_HPP

#include "opal/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace opal {

/// A named basis symbol of a graded vector space. Degrees are unbounded
/// integers; parity is derived on demand, never stored, so both the
/// bidegree (0,1) and (-2,-1) conventions stay representable.
struct GradedSymbol {
  std::string name;
  int degree = 0;

  friend bool operator==(const GradedSymbol &a, const GradedSymbol &b) {
    return a.name == b.name;
  }
};

/// Degree shifting operator s (up, degree +1) or s^{-1} (down, degree -1).
struct ShiftOp {
  enum Direction { up, down };
  Direction direction = up;
  int degree() const { return direction == up ? 1 : -1; }
};

inline int parity(int degree) { return ((degree % 2) + 2) % 2; }

/// Collapses an integer degree to its Z_2 representative in {0,1}.
/// Exposed as an explicit mode so callers that work "in the category of
/// Z_2-graded spaces" opt in instead of degrees being conflated silently.
inline int parity_collapse(int degree) { return parity(degree); }

/// A permutation in one-line notation: perm[k] is the (1-based) source
/// slot placed at output position k, i.e. the permuted word is
/// (x_{perm[0]}, ..., x_{perm[n-1]}).
using Perm = std::vector<int>;

bool is_permutation(const Perm &perm);

/// Composition such that applying `inner` first and `outer` second equals
/// applying compose(outer, inner) once.
Perm compose(const Perm &outer, const Perm &inner);

/// Koszul sign of reordering x_1 ... x_n into x_{perm[0]} ... x_{perm[n-1]}:
/// the product of (-1)^{|x_a||x_b|} over every pair the permutation inverts.
/// Throws std::invalid_argument on a length mismatch or a non-bijection.
int koszul_sign(const Perm &perm, const std::vector<int> &degrees);

/// Plain sign of a permutation (all degrees odd).
int perm_sign(const Perm &perm);

/// All (i, n-i)-unshuffles: permutations ascending on the first i output
/// slots and on the last n-i. Returns C(n,i) pairs (perm, sign); the sign
/// is the Koszul sign for `degrees` when given, else +1.
std::vector<std::pair<Perm, int>>
unshuffles(int i, int n, const std::vector<int> *degrees = nullptr);

/// Sign for transporting a binary bracket of degree b across a shift:
/// s[.,.](s^{-1} (x) s^{-1}) picks up (-1)^{|x1|+1} on the first argument.
inline int shift_bracket_sign(int x1_degree) {
  return parity(x1_degree + 1) ? -1 : 1;
}

/// Prefactor (-1)^{|b|} the derived bracket carries when the Lie bracket
/// itself has degree b.
inline int bracket_degree_sign(int bracket_degree) {
  return parity(bracket_degree) ? -1 : 1;
}

/// Degree of the coderivation induced by a corestriction f of arity
/// profile (a_1,...,a_n): 2 + |f| - sum a_i - n.
int coderivation_degree(int f_degree, const std::vector<int> &profile);

} // namespace opal

#endif
