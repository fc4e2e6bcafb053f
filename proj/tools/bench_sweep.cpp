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
//
// Compares the serial fault-sweep path against the OpenMP one on the same
// gadget and model. Run with --benchmark_filter=... to pick cases.

#include <benchmark/benchmark.h>

#include "lossft/checker.hpp"
#include "lossft/fault.hpp"
#include "lossft/protocols.hpp"

namespace {

using namespace lossft;

FaultModel pauli_only() {
  FaultModel m;
  m.include_loss = false;
  return m;
}

FaultModel loss_only() {
  FaultModel m;
  m.include_pauli = false;
  m.loss_combos = LossComboSet::paper5;
  return m;
}

void run_sweep(benchmark::State& state, const char* protocol, FaultModel model, int jobs) {
  ProtocolBuild build = build_protocol(protocol, LruStrategy::data_pre);
  CheckOptions o;
  o.jobs = jobs;
  for (auto _ : state) {
    CheckReport rep = check_single_faults(build, model, o);
    // Some of the benchmarked gadget/model pairs genuinely report violations
    // (e.g. knill under loss); only truncation means the measurement is bogus.
    benchmark::DoNotOptimize(rep.violations);
    if (rep.truncated) state.SkipWithError("sweep truncated");
  }
  state.counters["specs"] = double(enumerate_fault_locations(build.circuit, model).size());
}

void BM_SteanePauliSerial(benchmark::State& s) { run_sweep(s, "steane", pauli_only(), 1); }
void BM_SteanePauliParallel(benchmark::State& s) {
  run_sweep(s, "steane", pauli_only(), int(s.range(0)));
}
void BM_SteaneLossSerial(benchmark::State& s) { run_sweep(s, "steane", loss_only(), 1); }
void BM_SteaneLossParallel(benchmark::State& s) {
  run_sweep(s, "steane", loss_only(), int(s.range(0)));
}
void BM_KnillLossSerial(benchmark::State& s) { run_sweep(s, "knill", loss_only(), 1); }
void BM_KnillLossParallel(benchmark::State& s) {
  run_sweep(s, "knill", loss_only(), int(s.range(0)));
}

BENCHMARK(BM_SteanePauliSerial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_SteanePauliParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_SteaneLossSerial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_SteaneLossParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_KnillLossSerial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_KnillLossParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
