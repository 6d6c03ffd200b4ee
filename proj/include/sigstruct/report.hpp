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

// Command results. Text and JSON are rendered from the same value, in
// insertion order, with no timings, so output is stable across runs.

#ifndef SIGSTRUCT_REPORT_HPP_
#define SIGSTRUCT_REPORT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sigstruct {

struct Measure {
  std::string name;
  std::variant<bool, std::int64_t, double, std::string> value;
};

Measure MeasureOf(std::string name, bool v);
Measure MeasureOf(std::string name, int v);
Measure MeasureOf(std::string name, std::size_t v);
Measure MeasureOf(std::string name, double v);
Measure MeasureOf(std::string name, std::string v);
Measure MeasureOf(std::string name, const char* v);
// Value as shown in text reports.
std::string MeasureText(const Measure& m);

struct Check {
  std::string id;
  std::string title;
  bool pass = true;
  std::vector<Measure> measures;
  std::string tolerance;  // empty when the check is exact
  std::string detail;     // first divergence, or a note

  template <typename T>
  Check& add(std::string name, T value) {
    measures.push_back(MeasureOf(std::move(name), value));
    return *this;
  }
  // Records a condition; the check fails if any condition fails, and the
  // first failing condition becomes the detail.
  Check& require(bool ok, const std::string& what);
};

Check MakeCheck(std::string id, std::string title);

struct Report {
  std::vector<std::string> command;
  std::string inputs_digest;
  std::vector<Check> checks;

  bool pass() const;
  std::string text() const;
  std::string json() const;
};

// 64-bit FNV-1a, as 16 hex digits.
std::string Fnv1a(std::string_view bytes);

// Shortest text that reads back to the same double; small dyadic and
// decimal fractions are also shown as p/q, e.g. "0.0625 (1/16)".
std::string FormatNumber(double x);
std::string FormatFraction(double x);

}  // namespace sigstruct

#endif  // SIGSTRUCT_REPORT_HPP_
