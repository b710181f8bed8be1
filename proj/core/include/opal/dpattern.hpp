#ifndef OPAL_DPATTERN_HPP
#define OPAL_DPATTERN_HPP

#include "opal/kernel.hpp"
#include "opal/rational.hpp"

#include <cstdint>
#include <map>

namespace opal {

/// Arity-n elements of the operad generated by a commutative product and
/// a formal square-zero differential d of degree +1, written in the
/// d-pattern basis: e_S = multiply all n slots, applying d on the slots
/// in S. The pattern mask has bit (label-1) set when slot `label`
/// carries d; d-operators are canonically ordered by slot label, each of
/// degree +1, so reorderings contribute the usual signs.
using PatternMask = std::uint16_t;
using PatternElem = std::map<PatternMask, Rational>;

/// Number of label crossings between two disjoint label sets when the
/// concatenated (A-sorted, B-sorted) list is re-sorted: pairs p in A,
/// q in B with q < p.
int pattern_crossings(PatternMask a, PatternMask b);

/// Product of two pattern elements on disjoint slot sets.
PatternElem pattern_merge(const PatternElem &a, const PatternElem &b);

/// Applies d on the left: d e_S = sum over free slots k of
/// (-1)^{#{j in S : j < k}} e_{S + k}; slots limited to `slots`.
PatternElem pattern_d(const PatternElem &e, PatternMask slots);

/// Relabels slots by perm (slot l -> perm[l-1]) with the Koszul sign from
/// reordering the odd d-operators.
PatternElem pattern_act(const Perm &perm, const PatternElem &e);

/// Partial composition e_S o_i e_T for f of arity m and g of arity n.
/// When slot i of f carries d it is pushed into g by the derivation rule;
/// inserting g (of degree |T|) under the d-operators of f sitting on
/// later slots costs the usual sign.
PatternElem pattern_compose(const PatternElem &f, int m, int i,
                            const PatternElem &g, int n);

std::string pattern_str(PatternMask mask, int arity);

} // namespace opal

#endif
