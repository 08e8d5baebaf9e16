#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "poscurves/toric.hpp"

namespace poscurves {

namespace detail {

inline MatQ int_rows(std::initializer_list<std::initializer_list<int>> rows) {
  MatQ m;
  for (auto& r : rows) {
    VecQ v;
    for (int x : r) v.push_back(Rational(x));
    m.push_back(v);
  }
  return m;
}

}  // namespace detail

inline const std::vector<std::string>& builtin_fan_names() {
  static const std::vector<std::string> names = {"p2",    "p3",    "p1xp1",
                                                 "blp2",  "bl2p2", "projbundle"};
  return names;
}

inline Fan builtin_fan(const std::string& name) {
  if (name == "p2")
    return {2, detail::int_rows({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}, {2, 0}}};
  if (name == "p3")
    return {3, detail::int_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}),
            {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  if (name == "p1xp1")
    return {2, detail::int_rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}),
            {{0, 2}, {2, 1}, {1, 3}, {3, 0}}};
  if (name == "blp2")
    return {2, detail::int_rows({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}),
            {{0, 3}, {3, 1}, {1, 2}, {2, 0}}};
  if (name == "bl2p2")
    return {2, detail::int_rows({{1, 0}, {0, 1}, {-1, -1}, {1, 1}, {0, -1}}),
            {{0, 3}, {3, 1}, {1, 2}, {2, 4}, {4, 0}}};
  if (name == "projbundle")  // P(O + O + O(-1)) over the line
    return {3,
            detail::int_rows(
                {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}, {0, -1, -1}}),
            {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4}, {1, 2, 3}, {1, 2, 4}}};
  throw std::invalid_argument("unknown builtin fan '" + name + "'");
}

inline ToricVariety builtin_variety(const std::string& name) {
  return ToricVariety(builtin_fan(name));
}

}  // namespace poscurves
