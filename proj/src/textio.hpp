#pragma once

#include <istream>
#include <string>

#include "tsr/common.hpp"

namespace tsr::textio {

inline void expect_header(std::istream& in, const char* tag) {
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != tag || version != 1)
    throw ParseError(std::string("expected header '") + tag + " 1'");
}

template <class T>
T read_number(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw ParseError(std::string("unexpected end of input reading ") + what);
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(token, &used);
    if (used != token.size() || token[0] == '-') throw ParseError("");
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad number '") + token + "' for " + what);
  }
}

}  // namespace tsr::textio
