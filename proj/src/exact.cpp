#include "crystal/exact.hpp"

#include <cstdlib>

namespace crystal {

namespace {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty numeric token");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num(s.substr(0, slash));
    Rational den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in " + s);
    return num / den;
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Rational num(digits);
    Rational den(1);
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return num / den;
  }
  return Rational(s);
}

}  // namespace

Exact parse_exact(const std::string& token) {
  std::string s = token;
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = (s[0] == '-');
    s = s.substr(1);
  }
  auto pos = s.find("sqrt3");
  Exact result;
  if (pos == std::string::npos) {
    result = Exact(parse_rational(s));
  } else {
    Rational coef(1);
    std::string pre = s.substr(0, pos);
    std::string post = s.substr(pos + 5);
    if (!pre.empty()) {
      if (pre.back() == '*') pre.pop_back();
      if (!pre.empty()) coef = parse_rational(pre);
    }
    if (!post.empty()) {
      if (post[0] != '/') throw std::invalid_argument("bad token: " + token);
      coef /= parse_rational(post.substr(1));
    }
    result = Exact(Rational(0), coef);
  }
  return neg ? -result : result;
}

}  // namespace crystal
