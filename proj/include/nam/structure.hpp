#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "nam/ast.hpp"

namespace nam {

using ElemSet = uint32_t;  // bitmask over elements
inline constexpr int kMaxN = 5;

enum class Philosophy { A, B };

// Finite membership structure. Immutable once built; safe to share.
// ext[e] holds the members of e, i.e. member(a, e) means "a in e".
struct Structure {
  int n = 1;
  std::array<ElemSet, kMaxN> ext{};
  ElemSet normalMask = 0;
  std::array<std::optional<int>, 3> designations{};  // indexed by ConstTag
  std::map<std::string, int> denotations;            // canonical builder text -> element

  ElemSet universe() const { return (ElemSet{1} << n) - 1; }
  bool member(int a, int b) const { return (ext[b] >> a) & 1; }
  bool is_normal(int e) const { return (normalMask >> e) & 1; }
  std::optional<int> designation(ConstTag t) const { return designations[static_cast<size_t>(t)]; }
};

// One line: n=<int>;E=<row-major 0/1, length n*n>;N=<0/1, length n>;
//           des=US:<i|->,OM:<i|->,AT:<i|->;den=<term>:<i>,...
// E position r*n+c covers "r in c". Denotation keys are canonicalized on read.
std::string serialize(const Structure& s);
Structure deserialize(const std::string& line);  // FormatError on malformed input

}  // namespace nam
