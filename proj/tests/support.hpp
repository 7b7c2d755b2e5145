#pragma once

#include <doctest.h>

#include "polyvfe/error.hpp"

namespace test_support {

template <typename F>
bool throws_code(F&& f, polyvfe::Errc code) {
  try {
    f();
  } catch (const polyvfe::Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace test_support

#define CHECK_ERRC(expr, code) CHECK(test_support::throws_code([&] { (void)(expr); }, (code)))
