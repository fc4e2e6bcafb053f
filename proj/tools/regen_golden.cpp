// Copyright 2026 The lossft Authors
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

// Rewrites the golden circuit files under tests/golden/ from the current
// protocol builders. Run from the repository root after an intentional
// builder change, then review the diff.

#include <fstream>
#include <iostream>

#include "lossft/protocols.hpp"

int main() {
  using namespace lossft;
  struct Entry {
    const char* path;
    const char* protocol;
    LruStrategy strategy;
  };
  const Entry entries[] = {
      {"tests/golden/steane_data_pre.circuit", "steane", LruStrategy::data_pre},
  };
  for (const Entry& e : entries) {
    ProtocolBuild b = build_protocol(e.protocol, e.strategy);
    std::ofstream out(e.path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << e.path << " (run from the repo root)\n";
      return 1;
    }
    out << serialize_circuit(b.circuit);
    std::cout << "wrote " << e.path << "\n";
  }
  return 0;
}
