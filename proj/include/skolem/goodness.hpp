#pragma once

#include <cstdint>
#include <string>

#include "skolem/phase1.hpp"
#include "skolem/sat.hpp"

namespace skolem {

/// Exact non-negative rational.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

/// Fraction of input assignments on which a candidate vector is wrong:
/// numerator / 2^input_bits.
struct GoodnessRatio {
  std::uint64_t numerator = 0;
  std::size_t input_bits = 0;
  /// False when the enumeration cap was hit; the ratio is then a lower bound.
  bool exact = true;

  /// Exact three-way comparison with `r`: negative, zero or positive.
  int compare(const Ratio& r) const;
  bool below(const Ratio& r) const { return compare(r) < 0; }
  bool above(const Ratio& r) const { return compare(r) > 0; }
  bool is_zero() const { return numerator == 0; }
  /// "num/2^m" in lowest terms.
  std::string str() const;
  double approx() const;
};

/// Y-projected model count of the error formula over 2^|Y|.
/// Throws ResourceLimit.
GoodnessRatio goodness_ratio(const ErrorFormula& eps, std::uint64_t cap = kNoCap,
                             const Budget& budget = {});

}  // namespace skolem
