// Copyright 2026 The krsp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "krsp/numeric.hpp"

#include <cctype>
#include <cstddef>

namespace krsp {
namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// The mpz string constructor treats a leading 0 as octal; force base 10.
Int make_int(const std::string& s) {
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  std::size_t nz = s.find_first_not_of('0', i);
  if (nz == std::string::npos) return Int(0);
  Int v(s.substr(nz));
  return s[0] == '-' ? Int(-v) : v;
}

}  // namespace

std::optional<Rat> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
    Int d = make_int(den);
    if (d == 0) return std::nullopt;
    return Rat(make_int(num), d);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::string frac = text.substr(dot + 1);
    if (digits == "-" || digits == "+") return std::nullopt;
    if (!is_integer_token(digits.empty() ? "x" : digits)) return std::nullopt;
    Int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rat(make_int(digits), den);
  }
  if (!is_integer_token(text)) return std::nullopt;
  return Rat(make_int(text));
}

std::string to_string(const Int& v) { return v.str(); }

std::string to_string(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace krsp
