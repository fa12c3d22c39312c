#pragma once

#include <doctest.h>

#include "pmc/error.hpp"

// Runs f and returns the kind of the pmc::Error it throws; fails the test if
// nothing is thrown.
template <class F>
pmc::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const pmc::Error& e) {
    return e.kind();
  }
  FAIL("expected pmc::Error");
  return pmc::ErrorKind::Config;
}
