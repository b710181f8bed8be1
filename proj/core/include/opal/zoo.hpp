#ifndef OPAL_ZOO_HPP
#define OPAL_ZOO_HPP

#include "opal/dpattern.hpp"
#include "opal/quadratic.hpp"
#include "opal/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opal::zoo {

/// Registered presentation plus bidegree metadata where the paper
/// assigns one (LL, sInvLL and the duals).
struct NamedPresentation {
  const QuadraticPresentation *pres;
  std::optional<std::pair<int, int>> bidegree;
};

/// Names: Com, Lie, Leib, sLeib, Zinb, sInvZinb, Perm, sPerm, D, LL,
/// sInvLL, ZC, sZC. Throws std::out_of_range on anything else.
NamedPresentation named(const std::string &name);
const QuadraticPresentation &presentation(const std::string &name);
std::vector<std::string> names();

/// Koszul-duality pairing tables on the generator spaces.
GenPairing pairing_ll_zc();
GenPairing pairing_sll_szc();

/// Distributive-law graphs x - delta(x), over combined_family(P, Q).
std::vector<OperadElement> ll_delta_graph();
std::vector<OperadElement> ll_delta_graph_flipped(); // last sign of the
                                                     // mixed relation flipped
std::vector<OperadElement> poisson_delta_graph();

/// dim D(n): the d-pattern count 2^n - 1 (all slot subsets except the
/// all-d one).
long long deriving_dim(int n);

/// The role a generator plays when a tree monomial is evaluated into the
/// d-pattern algebra.
enum class PatternRole { multiply, d_left, d_right };

/// Evaluates a tree monomial over a binary family into the pattern
/// algebra, given each generator's role.
PatternElem eval_pattern(const GenFamily &fam, const TreeCode &code,
                         const std::vector<PatternRole> &roles);

/// Derived-bracket expansion of an element over the LL (or sLeib) family:
/// each Leibniz node [u,v] becomes (du, v), d is pushed to the leaves by
/// the derivation rule, and the result is a combination of (Lie-tree,
/// d-pattern) pairs.
std::map<std::pair<TreeCode, PatternMask>, Rational>
derived_expansion(const OperadElement &e);

/// The section 2.3/3.2 checks: the d (x) d (x) 1 composition signs, the
/// sPerm relations under the 1<>2 <-> d(x)1 dictionary, dim(Lie (x) sPerm)
/// against sLeib for n <= 4, and membership of the expanded odd Leibniz
/// relation in Jacobi (x) patterns.
DimReport verify_operadic_derived_bracket();

} // namespace opal::zoo

#endif
