#pragma once

#include <string>

#include "bcox/ring.hpp"

namespace bcox::test {

inline RationalFn var(const std::string& name, int power = 1) {
  return RationalFn::variable(standard_registry()[name], power);
}

inline RationalFn num(long n, long d = 1) { return RationalFn(&standard_registry(), Rational(n, d)); }

}  // namespace bcox::test
