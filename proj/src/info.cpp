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

#include "sigstruct/info.hpp"

#include <cmath>

namespace sigstruct {
namespace {

std::vector<std::string> as_list(const VariableSet& a, const VariableSet& b = {},
                                 const VariableSet& c = {}) {
  std::vector<std::string> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

double entropy(const std::vector<double>& table) {
  double h = 0.0;
  for (double p : table) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double entropy(const BayesNet& net, const VariableSet& vars) {
  if (vars.empty()) return 0.0;
  return entropy(marginal(net, as_list(vars)).table);
}

double conditional_mutual_information(const BayesNet& net, const VariableSet& x,
                                      const VariableSet& y, const VariableSet& z) {
  // Joint laid out as (x, y, z) with z fastest.
  Distribution joint = marginal(net, as_list(x, y, z));
  std::size_t nx = 1, ny = 1, nz = 1;
  for (std::size_t k = 0; k < joint.labels.size(); ++k) {
    std::size_t card = joint.labels[k].size();
    if (k < x.size()) {
      nx *= card;
    } else if (k < x.size() + y.size()) {
      ny *= card;
    } else {
      nz *= card;
    }
  }
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return joint.table[(i * ny + j) * nz + k]; };
  std::vector<double> pz(nz, 0.0), pxz(nx * nz, 0.0), pyz(ny * nz, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t k = 0; k < nz; ++k) {
        double p = at(i, j, k);
        pz[k] += p;
        pxz[i * nz + k] += p;
        pyz[j * nz + k] += p;
      }
    }
  }
  double info = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t k = 0; k < nz; ++k) {
        double p = at(i, j, k);
        if (p > 0.0) info += p * std::log(p * pz[k] / (pxz[i * nz + k] * pyz[j * nz + k]));
      }
    }
  }
  return info;
}

double mutual_information_by_entropies(const BayesNet& net, const VariableSet& x,
                                       const VariableSet& y, const VariableSet& z) {
  VariableSet xz = x, yz = y, xyz = x;
  xz.insert(z.begin(), z.end());
  yz.insert(z.begin(), z.end());
  xyz.insert(y.begin(), y.end());
  xyz.insert(z.begin(), z.end());
  return entropy(net, xz) + entropy(net, yz) - entropy(net, xyz) - entropy(net, z);
}

}  // namespace sigstruct
