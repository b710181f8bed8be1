#include "opal/rational.hpp"

#include <ostream>

namespace opal {

Rational Rational::parse(const std::string &s) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  auto slash = s.find('/');
  auto to_i64 = [](const std::string &t) {
    if (t.empty() || (t.size() == 1 && (t[0] == '-' || t[0] == '+')))
      throw std::invalid_argument("Rational::parse: bad integer");
    std::size_t pos = 0;
    long long v = std::stoll(t, &pos);
    if (pos != t.size())
      throw std::invalid_argument("Rational::parse: trailing junk in '" + t + "'");
    return (std::int64_t)v;
  };
  if (slash == std::string::npos) return Rational(to_i64(s));
  return Rational(to_i64(s.substr(0, slash)), to_i64(s.substr(slash + 1)));
}

std::ostream &operator<<(std::ostream &os, const Rational &r) {
  return os << r.str();
}

} // namespace opal
