#pragma once

#include <string>
#include <vector>

#include "approach_lab.hpp"

namespace approach_lab::test {

inline ExtValue V(const std::string& s) { return ExtValue::parse(s); }

// a,b,c with the matrix used throughout the docs
inline SpacePtr W() {
  return make_space({"a", "b", "c"}, {{V("0"), V("1"), V("2")}, {V("3/2"), V("0"), V("1")}, {V("1/2"), V("3/2"), V("0")}});
}

inline SpacePtr two_point(const std::string& uv, const std::string& vu) { return make_space({"u", "v"}, {{V("0"), V(uv)}, {V(vu), V("0")}}); }

// bot <= mid <= top as a 0/inf space
inline SpacePtr chain3() {
  Relation leq(3, std::vector<bool>(3, false));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) leq[i][j] = true;
  return std::make_shared<const FiniteSpace>(omega_of_order({"bot", "mid", "top"}, leq));
}

inline std::string data_file(const std::string& name) { return std::string(APPROACH_LAB_DATA_DIR) + "/" + name; }

}  // namespace approach_lab::test
