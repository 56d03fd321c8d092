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

#ifndef KRSP_NUMERIC_HPP_
#define KRSP_NUMERIC_HPP_

#include <optional>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace krsp {

// Exact arithmetic everywhere. Costs, delays and all derived quantities are
// arbitrary-precision integers; ratio comparisons and LP pivoting use exact
// rationals. No doubles in any decision path.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

// Parses "p/q", a decimal like "0.25", or a plain integer, exactly.
std::optional<Rat> parse_rational(const std::string& text);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

}  // namespace krsp

#endif  // KRSP_NUMERIC_HPP_
