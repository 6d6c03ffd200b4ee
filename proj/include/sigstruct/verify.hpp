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

// The acceptance suite: one check per criterion, in order.

#ifndef SIGSTRUCT_VERIFY_HPP_
#define SIGSTRUCT_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sigstruct/report.hpp"

namespace sigstruct {

struct VerifyOptions {
  // Directory holding the bundled model files.
  std::string models_dir = "models";
  // Criterion id or 1-based number; empty runs everything.
  std::string only;
  std::uint64_t seed = 0;
};

const std::vector<std::string>& CriterionIds();

// Throws ParameterError for an unknown `only`. The inputs digest covers the
// options and every file read.
Report verify_paper(const VerifyOptions& options);

// A single criterion (index into CriterionIds()).
Check run_criterion(std::size_t index, const VerifyOptions& options, std::string* inputs = nullptr);

}  // namespace sigstruct

#endif  // SIGSTRUCT_VERIFY_HPP_
