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

// Acceptance harness: one line per criterion with its verdict, headline
// numbers, tolerance and runtime against its budget. Exit 0 iff all pass.
//
// RUN: ./acceptance [models-dir]

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "sigstruct/verify.hpp"

namespace {

struct Budget {
  const char* id;
  double seconds;
};

// Runtime budgets per criterion; the last one is the whole suite.
const Budget kBudgets[] = {
    {"appendix-a", 1.0},           {"fingerprints", 5.0},
    {"theorem1", 30.0},            {"theorem5-qualitative", 1.0},
    {"theorem5-numeric", 30.0},    {"correctness-correlation", 10.0},
    {"ci-uniqueness", 20.0},       {"interpretation-bound", 5.0},
    {"msr-dichotomy", 30.0},       {"infrastructure", 60.0},
};

std::string Headline(const sigstruct::Check& c) {
  std::string out;
  for (std::size_t k = 0; k < c.measures.size() && k < 3; ++k) {
    out += (out.empty() ? "" : "; ") + c.measures[k].name + " = " + sigstruct::MeasureText(c.measures[k]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  sigstruct::VerifyOptions options;
  options.models_dir = argc > 1 ? argv[1] : SIGSTRUCT_MODELS_DIR;
  const auto& ids = sigstruct::CriterionIds();
  bool all = true;
  double total = 0.0;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    sigstruct::Check c = sigstruct::run_criterion(k, options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total += seconds;
    const bool last = k + 1 == ids.size();
    const double used = last ? total : seconds;
    const bool in_time = used < kBudgets[k].seconds;
    const bool pass = c.pass && in_time && ids[k] == kBudgets[k].id;
    all = all && pass;
    std::printf("[%s] %2zu %-24s %s | tol: %s | %.2fs%s < %.0fs%s%s\n", pass ? "PASS" : "FAIL", k + 1, ids[k].c_str(),
                Headline(c).c_str(), c.tolerance.empty() ? "exact" : c.tolerance.c_str(), used,
                last ? " suite" : "", kBudgets[k].seconds, in_time ? "" : " OVER BUDGET",
                c.pass ? "" : (" | " + c.detail).c_str());
  }
  std::printf("%s: %zu criteria, %.2fs total\n", all ? "ALL PASS" : "FAILED", ids.size(), total);
  return all ? 0 : 1;
}
