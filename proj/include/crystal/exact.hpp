#ifndef CRYSTAL_EXACT_HPP
#define CRYSTAL_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crystal {

using Rational = boost::multiprecision::cpp_rational;

/// Element of the quadratic field Q[sqrt(3)], stored as a + b*sqrt(3).
/// Every catalog lattice (line, square, skew, hexagonal, Kagome) has its
/// basis, harmonic positions and diffusion matrix in this field, so the
/// published diffusion matrices can be reproduced with no rounding at all.
struct Exact {
  Rational a{0};
  Rational b{0};

  Exact() = default;
  Exact(long v) : a(v) {}  // NOLINT(google-explicit-constructor)
  Exact(Rational ra) : a(std::move(ra)) {}  // NOLINT
  Exact(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static Exact sqrt3() { return Exact(Rational(0), Rational(1)); }

  bool is_rational() const { return b == 0; }
  bool is_zero() const { return a == 0 && b == 0; }

  double to_double() const {
    return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(3.0);
  }

  friend Exact operator+(const Exact& x, const Exact& y) {
    return Exact(x.a + y.a, x.b + y.b);
  }
  friend Exact operator-(const Exact& x, const Exact& y) {
    return Exact(x.a - y.a, x.b - y.b);
  }
  friend Exact operator-(const Exact& x) { return Exact(-x.a, -x.b); }
  friend Exact operator*(const Exact& x, const Exact& y) {
    return Exact(x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a);
  }
  friend Exact operator/(const Exact& x, const Exact& y) {
    // (a+b s)^(-1) = (a - b s) / (a^2 - 3 b^2); the norm vanishes only at 0
    // since sqrt(3) is irrational.
    Rational norm = y.a * y.a - 3 * y.b * y.b;
    if (norm == 0) throw std::domain_error("Exact: division by zero");
    return x * Exact(y.a / norm, -y.b / norm);
  }
  Exact& operator+=(const Exact& y) { return *this = *this + y; }
  Exact& operator-=(const Exact& y) { return *this = *this - y; }
  Exact& operator*=(const Exact& y) { return *this = *this * y; }
  Exact& operator/=(const Exact& y) { return *this = *this / y; }

  friend bool operator==(const Exact& x, const Exact& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const Exact& x, const Exact& y) { return !(x == y); }

  std::string str() const {
    auto rat = [](const Rational& r) {
      std::string s = numerator(r).str();
      if (denominator(r) != 1) s += "/" + denominator(r).str();
      return s;
    };
    if (b == 0) return rat(a);
    std::string root;
    if (b == 1) {
      root = "sqrt3";
    } else if (b == -1) {
      root = "-sqrt3";
    } else if (denominator(b) == 1) {
      root = numerator(b).str() + "*sqrt3";
    } else if (numerator(b) == 1) {
      root = "sqrt3/" + denominator(b).str();
    } else if (numerator(b) == -1) {
      root = "-sqrt3/" + denominator(b).str();
    } else {
      root = numerator(b).str() + "*sqrt3/" + denominator(b).str();
    }
    if (a == 0) return root;
    if (root[0] == '-') return rat(a) + root;
    return rat(a) + "+" + root;
  }
};

/// Parses a single exact token: "3/2", "-1", "2.5", "sqrt3", "-sqrt3/2",
/// "3*sqrt3/4".  Decimals are converted exactly via a power-of-ten
/// denominator.
Exact parse_exact(const std::string& token);

}  // namespace crystal

#endif
