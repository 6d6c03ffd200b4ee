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

// Golden arc lists and independence statements of the canonical
// structures, for two agents.

#ifndef SIGSTRUCT_FINGERPRINTS_HPP_
#define SIGSTRUCT_FINGERPRINTS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "sigstruct/canonical.hpp"
#include "sigstruct/structure_checks.hpp"

namespace sigstruct {

struct StructureFingerprint {
  CanonicalId id;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<DsepStatement> statements;
};

const StructureFingerprint& GoldenFingerprint(CanonicalId id);

struct FingerprintCheck {
  CanonicalId id;
  bool edges_match = false;
  // Per statement: graph verdict and numeric verdict on the default CPTs.
  std::vector<bool> dsep_matches;
  std::vector<bool> numeric_matches;
  std::vector<double> deviations;
  bool ok() const;
};

// Builds the default model and checks its arcs and statements.
FingerprintCheck check_fingerprint(CanonicalId id);

}  // namespace sigstruct

#endif  // SIGSTRUCT_FINGERPRINTS_HPP_
