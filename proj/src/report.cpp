// Copyright 2026 The wigner-deform Authors.
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


#include "wigner/report.hpp"

#include <algorithm>

namespace wigner {

nlohmann::ordered_json CheckRecord::to_json() const {
  nlohmann::ordered_json out;
  out["check"] = check;
  out["params"] = params;
  out["pass"] = pass;
  if (informational) out["informational"] = true;
  if (counterexample) out["counterexample"] = *counterexample;
  if (!detail.empty()) out["detail"] = detail;
  return out;
}

bool CheckReport::all_pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.pass || r.informational; });
}

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& record : records) out.push_back(record.to_json());
  return out;
}

}  // namespace wigner
