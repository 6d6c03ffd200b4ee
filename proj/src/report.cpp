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

#include "sigstruct/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace sigstruct {

Measure MeasureOf(std::string name, bool v) { return {std::move(name), v}; }
Measure MeasureOf(std::string name, int v) { return {std::move(name), static_cast<std::int64_t>(v)}; }
Measure MeasureOf(std::string name, std::size_t v) { return {std::move(name), static_cast<std::int64_t>(v)}; }
Measure MeasureOf(std::string name, double v) { return {std::move(name), v}; }
Measure MeasureOf(std::string name, std::string v) { return {std::move(name), std::move(v)}; }
Measure MeasureOf(std::string name, const char* v) { return {std::move(name), std::string(v)}; }

Check MakeCheck(std::string id, std::string title) {
  Check c;
  c.id = std::move(id);
  c.title = std::move(title);
  return c;
}

Check& Check::require(bool ok, const std::string& what) {
  if (!ok && pass) detail = what;
  pass = pass && ok;
  return *this;
}

bool Report::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return !checks.empty();
}

std::string FormatNumber(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string FormatFraction(double x) {
  const std::string plain = FormatNumber(x);
  if (x == 0.0 || !std::isfinite(x) || x == std::trunc(x)) return plain;
  for (long q = 2; q <= 1024; ++q) {
    const double p = std::round(x * static_cast<double>(q));
    if (p / static_cast<double>(q) == x) return plain + " (" + FormatNumber(p) + "/" + std::to_string(q) + ")";
  }
  return plain;
}

std::string Fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string MeasureText(const Measure& m) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return FormatFraction(v);
        } else {
          return v;
        }
      },
      m.value);
}

std::string Report::text() const {
  std::string out = "command:";
  for (const auto& a : command) {
    out += " " + (a.empty() || a.find(' ') != std::string::npos ? "\"" + a + "\"" : a);
  }
  out += "\ninputs: " + inputs_digest + "\n";
  for (const auto& c : checks) {
    out += std::string(c.pass ? "PASS " : "FAIL ") + c.id;
    if (!c.title.empty()) out += "  " + c.title;
    out += "\n";
    for (const auto& m : c.measures) out += "    " + m.name + " = " + MeasureText(m) + "\n";
    if (!c.tolerance.empty()) out += "    tolerance: " + c.tolerance + "\n";
    if (!c.detail.empty()) out += "    detail: " + c.detail + "\n";
  }
  out += std::string("overall: ") + (pass() ? "pass" : "fail") + "\n";
  return out;
}

std::string Report::json() const {
  using Json = nlohmann::ordered_json;
  Json j;
  j["command"] = command;
  j["inputs_digest"] = inputs_digest;
  Json results = Json::array();
  for (const auto& c : checks) {
    Json r;
    r["id"] = c.id;
    r["title"] = c.title;
    r["verdict"] = c.pass ? "pass" : "fail";
    Json measures = Json::object();
    for (const auto& m : c.measures) {
      std::visit([&](const auto& v) { measures[m.name] = v; }, m.value);
    }
    r["measures"] = measures;
    r["tolerance"] = c.tolerance;
    r["detail"] = c.detail;
    results.push_back(r);
  }
  j["results"] = results;
  j["overall"] = pass() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace sigstruct
