#ifndef CRYSTAL_EIGEN_EXACT_HPP
#define CRYSTAL_EIGEN_EXACT_HPP

#include <Eigen/Core>

#include "crystal/exact.hpp"

namespace Eigen {

template <>
struct NumTraits<crystal::Exact> {
  using Real = crystal::Exact;
  using NonInteger = crystal::Exact;
  using Literal = crystal::Exact;
  using Nested = crystal::Exact;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 20,
    MulCost = 40,
  };
  static inline Real epsilon() { return crystal::Exact(0); }
  static inline Real dummy_precision() { return crystal::Exact(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif
