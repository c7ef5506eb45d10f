#include "skolem/goodness.hpp"

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace skolem {

using boost::multiprecision::cpp_int;

int GoodnessRatio::compare(const Ratio& r) const {
  if (r.den == 0) throw std::invalid_argument("zero denominator");
  const cpp_int lhs = cpp_int(numerator) * r.den;
  const cpp_int rhs = cpp_int(r.num) << input_bits;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::string GoodnessRatio::str() const {
  if (numerator == 0) return "0/1";
  const std::size_t shift = std::min<std::size_t>(std::countr_zero(numerator), input_bits);
  const cpp_int den = cpp_int(1) << (input_bits - shift);
  return std::to_string(numerator >> shift) + "/" + den.str();
}

double GoodnessRatio::approx() const {
  return std::ldexp(static_cast<double>(numerator), -static_cast<int>(input_bits));
}

GoodnessRatio goodness_ratio(const ErrorFormula& eps, std::uint64_t cap, const Budget& budget) {
  const CnfInstance inst = encode(eps.circuit, eps.inputs);
  const ProjectedCount count = enumerate_projected(inst, eps.inputs, cap, budget);
  return {count.count, eps.inputs.size(), count.exhausted};
}

}  // namespace skolem
