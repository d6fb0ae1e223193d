#pragma once

#include <gtest/gtest.h>

#include <initializer_list>

#include "hpt/error.hpp"
#include "hpt/graded.hpp"

namespace hpt::test {

inline Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t r = 0;
  for (const auto& line : rows) {
    std::size_t c = 0;
    for (int v : line) m(r, c++) = v;
    ++r;
  }
  return m;
}

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no hpt::Error thrown";
  return ErrorKind::InvalidInput;
}

}  // namespace hpt::test
