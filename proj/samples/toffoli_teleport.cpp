// Copyright 2026 The telegate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Teleports a Toffoli gate across a three-party series network and prints
// what each of the 16 measurement branches produces for |110⟩.

#include <cstdio>

#include "telegate/telegate.hpp"

int main() {
    using namespace telegate;

    const ProtocolSpec spec{Family::SeriesNControlledU, 3, pauli_x()};
    const StateVector input = basis_state(3, "110");

    std::printf("schedule:");
    for (const auto &m : measurement_schedule(spec)) {
        std::printf(" (party %d, %s, %s)", m.party, Network::qubit_name(m.qubit).c_str(),
                    std::string(to_string(m.basis)).c_str());
    }
    std::printf("\n");

    EnumerateOptions opts;
    opts.keep_states = true;
    for (const BranchResult &b : enumerate_branches(spec, input, opts)) {
        std::size_t argmax = 0;
        for (std::size_t i = 1; i < b.data_state->dim(); ++i) {
            if (std::norm((*b.data_state)[i]) > std::norm((*b.data_state)[argmax])) {
                argmax = i;
            }
        }
        std::printf("branch %s  p=%.4f  fidelity=%.12f  -> |%zu%zu%zu>  %d ebits %d cbits\n",
                    b.outcomes.to_string().c_str(), b.probability, b.fidelity, (argmax >> 2U) & 1U,
                    (argmax >> 1U) & 1U, argmax & 1U, b.ledger.ebits, b.ledger.cbits);
    }
    return 0;
}
