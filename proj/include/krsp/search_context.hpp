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

#ifndef KRSP_SEARCH_CONTEXT_HPP_
#define KRSP_SEARCH_CONTEXT_HPP_

#include "krsp/numeric.hpp"
#include "krsp/residual.hpp"

namespace krsp {

enum class CycleKind { kType0, kType1, kType2, kNonBicameral };

// State shared by cycle classification and the cycle search: the residual
// graph of the current solution, the remaining slack to the delay bound
// (negative while the cancellation loop runs) and to the cost target, and
// the level budget cap for the auxiliary graphs.
struct SearchContext {
  const ResidualGraph* residual = nullptr;
  Int delta_d;        // delay bound minus current total delay
  Int cost_estimate;  // stand-in for the unknown optimal cost
  Int delta_c;        // cost_estimate minus current total cost
  long long b_max = 1;
};

}  // namespace krsp

#endif  // KRSP_SEARCH_CONTEXT_HPP_
