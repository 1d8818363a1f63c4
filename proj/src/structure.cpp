#include "nam/structure.hpp"

#include <sstream>
#include <vector>

#include "nam/errors.hpp"
#include "nam/parse.hpp"

namespace nam {

namespace {

const char* kDesNames[3] = {"US", "OM", "AT"};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string expect_prefix(const std::string& part, const std::string& prefix) {
  if (part.rfind(prefix, 0) != 0) {
    throw FormatError("expected '" + prefix + "' in structure text, got '" + part + "'");
  }
  return part.substr(prefix.size());
}

int parse_int(const std::string& s) {
  if (s.empty()) throw FormatError("empty number in structure text");
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw FormatError("bad number '" + s + "' in structure text");
  }
  if (pos != s.size()) throw FormatError("bad number '" + s + "' in structure text");
  return v;
}

}  // namespace

std::string serialize(const Structure& s) {
  std::ostringstream os;
  os << "n=" << s.n << ";E=";
  for (int r = 0; r < s.n; ++r)
    for (int c = 0; c < s.n; ++c) os << (s.member(r, c) ? '1' : '0');
  os << ";N=";
  for (int e = 0; e < s.n; ++e) os << (s.is_normal(e) ? '1' : '0');
  os << ";des=";
  for (int t = 0; t < 3; ++t) {
    if (t) os << ',';
    os << kDesNames[t] << ':';
    if (s.designations[t])
      os << *s.designations[t];
    else
      os << '-';
  }
  os << ";den=";
  bool first = true;
  for (const auto& [text, elem] : s.denotations) {
    if (!first) os << ',';
    first = false;
    os << text << ':' << elem;
  }
  return os.str();
}

Structure deserialize(const std::string& line) {
  auto parts = split(line, ';');
  if (parts.size() != 5) throw FormatError("structure text needs 5 ';'-separated sections");

  Structure s;
  s.n = parse_int(expect_prefix(parts[0], "n="));
  if (s.n < 1 || s.n > kMaxN) throw FormatError("structure size out of range");

  std::string e = expect_prefix(parts[1], "E=");
  if (static_cast<int>(e.size()) != s.n * s.n) throw FormatError("membership grid has wrong length");
  for (int r = 0; r < s.n; ++r) {
    for (int c = 0; c < s.n; ++c) {
      char ch = e[static_cast<size_t>(r * s.n + c)];
      if (ch != '0' && ch != '1') throw FormatError("membership grid must be 0/1");
      if (ch == '1') s.ext[c] |= ElemSet{1} << r;
    }
  }

  std::string nm = expect_prefix(parts[2], "N=");
  if (static_cast<int>(nm.size()) != s.n) throw FormatError("normality flags have wrong length");
  for (int i = 0; i < s.n; ++i) {
    if (nm[static_cast<size_t>(i)] == '1')
      s.normalMask |= ElemSet{1} << i;
    else if (nm[static_cast<size_t>(i)] != '0')
      throw FormatError("normality flags must be 0/1");
  }

  auto des = split(expect_prefix(parts[3], "des="), ',');
  if (des.size() != 3) throw FormatError("expected three designations");
  for (int t = 0; t < 3; ++t) {
    std::string entry = expect_prefix(des[static_cast<size_t>(t)], std::string(kDesNames[t]) + ":");
    if (entry == "-") continue;
    int v = parse_int(entry);
    if (v < 0 || v >= s.n) throw FormatError("designation out of range");
    s.designations[static_cast<size_t>(t)] = v;
  }

  std::string den = expect_prefix(parts[4], "den=");
  if (!den.empty()) {
    for (const auto& entry : split(den, ',')) {
      auto colon = entry.rfind(':');
      if (colon == std::string::npos) throw FormatError("denotation entry needs ':'");
      int v = parse_int(entry.substr(colon + 1));
      if (v < 0 || v >= s.n) throw FormatError("denotation out of range");
      std::string key;
      try {
        key = to_text(*parse_term(entry.substr(0, colon)));
      } catch (const ParseError& pe) {
        throw FormatError(std::string("bad denotation term: ") + pe.what());
      }
      s.denotations[key] = v;
    }
  }
  return s;
}

}  // namespace nam
