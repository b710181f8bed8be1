#ifndef OPAL_REPORT_HPP
#define OPAL_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace opal {

/// Outcome of one verification: labelled dimensions, pass/fail, and
/// witness strings for failures. Serialized by the CLI into its JSON
/// schema; kept plain here so core stays free of the JSON dependency.
struct DimReport {
  std::string check;
  bool pass = true;
  std::vector<std::pair<std::string, long long>> dims;
  std::vector<std::string> witnesses;
  std::vector<std::pair<std::string, std::string>> signs;
  std::vector<std::string> notes;

  void dim(const std::string &label, long long value) { dims.emplace_back(label, value); }
  void fail(const std::string &witness) {
    pass = false;
    witnesses.push_back(witness);
  }
  void require(bool ok, const std::string &witness) {
    if (!ok) fail(witness);
  }
  void merge(const DimReport &other);
};

} // namespace opal

#endif
