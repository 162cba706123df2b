#pragma once

#include <stdexcept>
#include <string>

#include "pbrel/opb_io.hpp"

// Letters in worked examples map to indices: a=x1, b=x2, ..., j=x10.
inline pbrel::PBConstraint pc(const std::string& text) {
  auto parts = pbrel::parse_normalized(text);
  if (parts.size() != 1) throw std::logic_error("expected a single inequality: " + text);
  return parts.front();
}

inline pbrel::Literal x(int v) { return pbrel::Literal::pos(v); }
inline pbrel::Literal nx(int v) { return pbrel::Literal::neg(v); }
