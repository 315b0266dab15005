// Copyright 2026 The shadowkit Authors
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
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shadowkit/system.hpp"

namespace shadowkit {

// Spec strings look like "family:key=value,key=value". Families:
//   tent:m=M                 tent map on the grid {0, 1/(M-1), ..., 1}
//   logistic:lambda=L,m=M    x -> L x (1 - x) on the same grid, 0 <= L <= 4
//   affine:a=A,b=B,m=M       x -> A x + B, must map [0,1] into itself
//   rotation:m=M,k=K         i -> i + K mod M with the arc metric on the circle
//   shift:s=S,p=P            the shift on periodic words of period <= P over S letters
//   random:n=N,seed=SEED     random metric and random map on N points
// Interval images are rounded to the nearest grid point, ties toward the smaller index.
struct ZooSpec {
  std::string family;
  std::map<std::string, std::string> params;

  std::string to_string() const;
};

struct ZooFamilyInfo {
  std::string name;
  std::string parameters;
  std::string description;
};

/// Throws ValidationError on unknown families, missing or malformed parameters.
ZooSpec parse_zoo_spec(std::string_view text);
SystemMap build_zoo(const ZooSpec& spec);
SystemMap build_zoo(std::string_view text);
std::vector<ZooFamilyInfo> list_zoo_families();

/// Expands integer ranges such as "tent:m=3..8" into one named system per value.
/// Several ranged parameters expand to their cartesian product.
std::vector<std::pair<std::string, SystemMap>> expand_zoo_family(std::string_view text);

}  // namespace shadowkit
