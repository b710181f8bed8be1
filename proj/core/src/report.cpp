#include "opal/report.hpp"

namespace opal {

void DimReport::merge(const DimReport &other) {
  pass = pass && other.pass;
  for (const auto &d : other.dims)
    dims.emplace_back(other.check.empty() ? d.first : other.check + "." + d.first,
                      d.second);
  for (const auto &w : other.witnesses)
    witnesses.push_back(other.check.empty() ? w : other.check + ": " + w);
  for (const auto &s : other.signs) signs.push_back(s);
  for (const auto &n : other.notes) notes.push_back(n);
}

} // namespace opal
