// Copyright 2026 The sigstruct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command dispatch behind the sigstruct executable. Each command loads its
// model, calls the owning module and returns a Report whose checks are
// self-consistency checks of the answer (or, for theorem1 and verify-paper,
// the claims being tested).

#ifndef SIGSTRUCT_COMMANDS_HPP_
#define SIGSTRUCT_COMMANDS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigstruct/report.hpp"

namespace sigstruct {

struct CommandRequest {
  std::string command;
  std::vector<std::string> echo;  // arguments as typed, for the report
  std::string model;              // --model path, may be empty
  // Command-specific options by long name, e.g. {"x", "s1"}.
  std::map<std::string, std::string> options;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  std::string only;
  std::string models_dir = "models";

  // Option value or `fallback` when absent.
  std::string get(const std::string& key, const std::string& fallback = "") const;
};

const std::vector<std::string>& CommandNames();

// Throws the owning module's errors (and ModelError for bad files)
// unchanged; validate reports file problems as failed checks instead.
Report run_command(const CommandRequest& request);

}  // namespace sigstruct

#endif  // SIGSTRUCT_COMMANDS_HPP_
