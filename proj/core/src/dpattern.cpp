#include "opal/dpattern.hpp"

#include <bit>
#include <string>

namespace opal {

int pattern_crossings(PatternMask a, PatternMask b) {
  int count = 0;
  for (int p = 0; p < 16; ++p)
    if (a & (1u << p)) count += std::popcount((unsigned)(b & ((1u << p) - 1)));
  return count;
}

PatternElem pattern_merge(const PatternElem &a, const PatternElem &b) {
  PatternElem out;
  for (const auto &[sa, va] : a)
    for (const auto &[sb, vb] : b) {
      Rational c = va * vb;
      if (pattern_crossings(sa, sb) % 2) c = -c;
      out[sa | sb] += c;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

PatternElem pattern_d(const PatternElem &e, PatternMask slots) {
  PatternElem out;
  for (const auto &[s, v] : e)
    for (int k = 0; k < 16; ++k) {
      PatternMask bit = 1u << k;
      if (!(slots & bit) || (s & bit)) continue;
      Rational c = v;
      if (std::popcount((unsigned)(s & (bit - 1))) % 2) c = -c;
      out[s | bit] += c;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

PatternElem pattern_act(const Perm &perm, const PatternElem &e) {
  PatternElem out;
  for (const auto &[s, v] : e) {
    PatternMask img = 0;
    // image labels in source-sorted order; count inversions
    int inv = 0;
    std::vector<int> imgs;
    for (int k = 0; k < (int)perm.size(); ++k)
      if (s & (1u << k)) imgs.push_back(perm[k]);
    for (std::size_t a = 0; a < imgs.size(); ++a) {
      img |= 1u << (imgs[a] - 1);
      for (std::size_t b = a + 1; b < imgs.size(); ++b)
        if (imgs[a] > imgs[b]) ++inv;
    }
    out[img] += (inv % 2) ? -v : v;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

PatternElem pattern_compose(const PatternElem &f, int m, int i,
                            const PatternElem &g, int n) {
  PatternMask g_slots = (PatternMask)((1u << n) - 1);
  PatternElem out;
  for (const auto &[S, vf] : f) {
    bool d_on_slot = S & (1u << (i - 1));
    // S with slot i removed and later slots shifted up by n-1
    PatternMask low = S & (PatternMask)((1u << (i - 1)) - 1);
    PatternMask high = (PatternMask)((S >> i) << (i - 1 + n));
    int tail_ds = std::popcount((unsigned)(S >> i));
    for (const auto &[T0, vg] : g) {
      Rational c0 = vf * vg;
      // inserting g's term (degree |T0|) under the d's on later slots
      if ((std::popcount((unsigned)T0) * tail_ds) % 2) c0 = -c0;
      PatternElem inner = d_on_slot ? pattern_d({{T0, c0}}, g_slots)
                                    : PatternElem{{T0, c0}};
      for (const auto &[T, c] : inner)
        out[(PatternMask)(low | (T << (i - 1)) | high)] += c;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::string pattern_str(PatternMask mask, int arity) {
  std::string s;
  for (int k = 0; k < arity; ++k) {
    if (k) s += "(x)";
    s += (mask & (1u << k)) ? "d" : "1";
  }
  return s;
}

} // namespace opal
