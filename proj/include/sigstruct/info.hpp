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

// Information measures in nats over the joint of a BayesNet.

#ifndef SIGSTRUCT_INFO_HPP_
#define SIGSTRUCT_INFO_HPP_

#include <vector>

#include "sigstruct/bayesnet.hpp"

namespace sigstruct {

// Shannon entropy of a table, 0 log 0 = 0.
double entropy(const std::vector<double>& table);
double entropy(const BayesNet& net, const VariableSet& vars);

// I(X; Y | Z) summed term by term over the joint of X, Y, Z.
double conditional_mutual_information(const BayesNet& net, const VariableSet& x,
                                      const VariableSet& y, const VariableSet& z = {});

// H(XZ) + H(YZ) - H(XYZ) - H(Z); an independent route to the same quantity.
double mutual_information_by_entropies(const BayesNet& net, const VariableSet& x,
                                       const VariableSet& y, const VariableSet& z = {});

}  // namespace sigstruct

#endif  // SIGSTRUCT_INFO_HPP_
