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


#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wigner {

/// One verification outcome: {check, params, pass, counterexample?}.
struct CheckRecord {
  std::string check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  bool pass = true;
  // Reported but never fails a run (descriptive or conjectural checks).
  bool informational = false;
  std::optional<std::string> counterexample;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

struct CheckReport {
  std::vector<CheckRecord> records;

  void add(CheckRecord record) { records.push_back(std::move(record)); }
  /// True when every non-informational record passes.
  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

}  // namespace wigner
