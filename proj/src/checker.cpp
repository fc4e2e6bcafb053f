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

#include "lossft/checker.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"
#include "lossft/tableau.hpp"

namespace lossft {

namespace {

constexpr const char* kSchema = "lossft.report/1";
constexpr const char* kEngine = "lossft/0.1.0";
constexpr int64_t kTestPrepBase = int64_t{1} << 20;

int num_generators(const CssCode& code) { return code.hx().rows() + code.hz().rows(); }

/// Generator g as a Pauli over tableau columns (X checks first, then Z).
Pauli gen_pauli(const Tableau& t, const CssCode& code, const std::vector<int>& outq, int g) {
  Pauli p(t.num_qubits());
  int rx = code.hx().rows();
  bool x_type = g < rx;
  const BitVec& row = x_type ? code.hx().row(g) : code.hz().row(g - rx);
  for (int j = 0; j < code.n(); ++j) {
    if (!row.get(j)) continue;
    int c = t.col(outq[j]);
    if (x_type)
      p.x.set(c, true);
    else
      p.z.set(c, true);
  }
  return p;
}

Pauli logical_pauli(const Tableau& t, const CssCode& code, const std::vector<int>& outq,
                    char basis) {
  Pauli p(t.num_qubits());
  const BitVec& supp = basis == 'x' ? code.logical_x(0) : code.logical_z(0);
  for (int j = 0; j < code.n(); ++j) {
    if (!supp.get(j)) continue;
    int c = t.col(outq[j]);
    if (basis == 'x')
      p.x.set(c, true);
    else
      p.z.set(c, true);
  }
  return p;
}

/// Decodes the measured generator bits and applies the lookup correction.
void apply_ideal_correction(Tableau& t, const CssCode& code, const std::vector<int>& outq,
                            const std::string& bits) {
  int rx = code.hx().rows(), rz = code.hz().rows();
  Syndrome s;
  s.x_checks = BitVec(rx);
  s.z_checks = BitVec(rz);
  for (int i = 0; i < rx; ++i) s.x_checks.set(i, bits[i] == '1');
  for (int i = 0; i < rz; ++i) s.z_checks.set(i, bits[rx + i] == '1');
  Pauli corr(code.n());
  try {
    corr = code.decode(s);
  } catch (const std::invalid_argument&) {
    return;  // syndrome outside the tables: no correction
  }
  for (int j = 0; j < code.n(); ++j) {
    char l = corr.at(j);
    if (l != 'I') t.apply_pauli(l, t.col(outq[j]));
  }
}

/// Measures the test-basis logical operator: 0/1 outcome, 2 = not
/// deterministic (logical information destroyed).
int logical_readout(const Tableau& t, const CssCode& code, const std::vector<int>& outq,
                    char basis) {
  Pauli lp = logical_pauli(t, code, outq, basis);
  if (t.find_anticommuting(lp) >= 0) return 2;
  return t.deterministic_value(lp) ? 1 : 0;
}

/// DFS over every generator-measurement outcome path. Returns false on the
/// first failing path, with the path and failure detail recorded.
bool ideal_dfs(Tableau t, const CssCode& code, const std::vector<int>& outq, char basis,
               int g, std::string bits, std::string* fail_path, std::string* fail_detail) {
  if (g == num_generators(code)) {
    apply_ideal_correction(t, code, outq, bits);
    int v = logical_readout(t, code, outq, basis);
    if (v == 0) return true;
    *fail_path = bits;
    *fail_detail = v == 2 ? "logical readout not deterministic" : "logical readout flipped";
    return false;
  }
  Pauli p = gen_pauli(t, code, outq, g);
  int piv = t.find_anticommuting(p);
  if (piv < 0) {
    bits.push_back(t.deterministic_value(p) ? '1' : '0');
    return ideal_dfs(std::move(t), code, outq, basis, g + 1, std::move(bits), fail_path,
                     fail_detail);
  }
  for (int bit = 0; bit < 2; ++bit) {
    Tableau c = t;
    c.project(p, bit == 1, piv);
    std::string nb = bits;
    nb.push_back(char('0' + bit));
    if (!ideal_dfs(std::move(c), code, outq, basis, g + 1, std::move(nb), fail_path,
                   fail_detail))
      return false;
  }
  return true;
}

/// Scripted variant for witness replay: follows the recorded outcome bits and
/// returns the logical readout (0/1/2).
int ideal_replay(Tableau t, const CssCode& code, const std::vector<int>& outq, char basis,
                 const std::string& script) {
  if (int(script.size()) != num_generators(code))
    throw ReplayError("syndrome path length mismatch");
  for (int g = 0; g < num_generators(code); ++g) {
    Pauli p = gen_pauli(t, code, outq, g);
    bool want = script[g] == '1';
    int piv = t.find_anticommuting(p);
    if (piv < 0) {
      if (t.deterministic_value(p) != want)
        throw ReplayError("syndrome path disagrees with a deterministic generator");
    } else {
      t.project(p, want, piv);
    }
  }
  apply_ideal_correction(t, code, outq, script);
  return logical_readout(t, code, outq, basis);
}

std::vector<int> lost_outputs_of(const ProtocolBuild& b, const SimBranch& br) {
  std::vector<int> lost;
  for (int q : b.output_data)
    if (q < int(br.lost.size()) && br.lost[q]) lost.push_back(q);
  return lost;
}

Tableau with_output_columns(const ProtocolBuild& b, const SimBranch& br) {
  Tableau t = br.tab;
  for (int q : b.output_data)
    if (t.col(q) < 0) t.add_qubit(q);
  return t;
}

}  // namespace

Circuit test_circuit(const ProtocolBuild& b, bool plus_state) {
  const CssCode& code = CodeRegistry::standard().get(b.code_name);
  Circuit pre(b.circuit.num_qubits(), kTestPrepBase);
  append_encode(pre, code, b.input_data, plus_state, "test-prep");
  return Circuit::concat(pre, b.circuit);
}

bool assess_branch(const ProtocolBuild& b, const CssCode& code, const SimBranch& branch,
                   char logical_basis, const std::string& test_state, Violation* out) {
  std::vector<int> lost = lost_outputs_of(b, branch);
  if (lost.size() > 6) throw std::logic_error("implausible residual loss count");
  Tableau base = with_output_columns(b, branch);
  uint64_t total = uint64_t{1} << (2 * lost.size());
  static const char* kLetters = "IXYZ";
  for (uint64_t idx = 0; idx < total; ++idx) {
    Tableau t = base;
    std::string comp;
    for (size_t i = 0; i < lost.size(); ++i) {
      char letter = kLetters[(idx >> (2 * i)) & 3];
      comp.push_back(letter);
      int c = t.col(lost[i]);
      t.reset_z(c);
      if (letter != 'I') t.apply_pauli(letter, c);
    }
    std::string fail_path, fail_detail;
    if (!ideal_dfs(std::move(t), code, b.output_data, logical_basis, 0, "", &fail_path,
                   &fail_detail)) {
      if (out)
        *out = Violation{test_state, branch.path, lost, comp, fail_path, fail_detail};
      return false;
    }
  }
  return true;
}

namespace {

struct TestCase {
  const Circuit* circuit;
  char basis;
  const char* name;
};

FaultResult eval_spec(const ProtocolBuild& b, const CssCode& code, const CodeRegistry& reg,
                      const FaultSpec& spec, const std::vector<TestCase>& tests,
                      const CheckOptions& o) {
  FaultResult r;
  r.spec = spec;
  const Op* op = b.circuit.find_location(spec.location);
  r.op = to_string(op->type);
  r.tag = op->tag;
  for (const TestCase& tc : tests) {
    RunOptions ro;
    ro.lazy_qubits = true;
    ro.retire = true;
    ro.keep_alive = b.output_data;
    ro.keep_record = false;
    ro.branch_cap = o.branch_cap;
    ro.codes = &reg;
    RunResult res;
    try {
      res = run_circuit(*tc.circuit, {spec}, ro);
    } catch (const TruncationError&) {
      r.truncated = true;
      r.ok = false;
      continue;
    }
    r.branches += res.branches.size();
    for (const SimBranch& br : res.branches) {
      Violation v;
      if (!assess_branch(b, code, br, tc.basis, tc.name, &v)) {
        r.ok = false;
        if (!o.first_witness_only || r.witnesses.empty()) r.witnesses.push_back(v);
        if (o.first_witness_only) break;
      }
    }
  }
  return r;
}

}  // namespace

CheckReport check_single_faults(const ProtocolBuild& b, const FaultModel& m,
                                const CheckOptions& o) {
  auto t0 = std::chrono::steady_clock::now();
  const CodeRegistry& reg = o.codes ? *o.codes : CodeRegistry::standard();
  const CssCode& code = reg.get(b.code_name);
  std::vector<FaultSpec> specs = enumerate_fault_locations(b.circuit, m);
  Circuit full_zero = test_circuit(b, false);
  Circuit full_plus = test_circuit(b, true);
  std::vector<TestCase> tests = {{&full_zero, 'z', "zero"}, {&full_plus, 'x', "plus"}};

  CheckReport rep;
  rep.protocol = b.protocol;
  rep.strategy = to_string(b.strategy);
  rep.code = b.code_name;
  rep.model = m;
  rep.specs = specs.size();
  rep.timings = o.timings;
  rep.rows.resize(specs.size());

  auto run_one = [&](int i) {
    auto s0 = std::chrono::steady_clock::now();
    rep.rows[i] = eval_spec(b, code, reg, specs[i], tests, o);
    if (o.timings)
      rep.rows[i].wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
  };

  if (o.jobs > 1) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(o.jobs) schedule(dynamic)
    for (int i = 0; i < int(specs.size()); ++i) run_one(i);
#else
    for (int i = 0; i < int(specs.size()); ++i) run_one(i);
#endif
  } else {
    for (int i = 0; i < int(specs.size()); ++i) run_one(i);
  }

  for (const FaultResult& r : rep.rows) {
    if (r.truncated)
      ++rep.truncated;
    else if (r.ok)
      ++rep.ok;
    if (!r.ok && !r.truncated) ++rep.violations;
  }
  if (o.timings)
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

int replay_witness(const ProtocolBuild& b, const FaultSpec& spec, const Violation& v,
                   const CheckOptions& o) {
  const CodeRegistry& reg = o.codes ? *o.codes : CodeRegistry::standard();
  const CssCode& code = reg.get(b.code_name);
  Circuit full = test_circuit(b, v.test_state == "plus");
  RunOptions ro;
  ro.lazy_qubits = true;
  ro.retire = true;
  ro.keep_alive = b.output_data;
  ro.keep_record = false;
  ro.branch_cap = o.branch_cap;
  ro.codes = &reg;
  ro.replay = &v.branch_path;
  RunResult res = run_circuit(full, {spec}, ro);
  if (res.branches.size() != 1) throw ReplayError("replay did not isolate one branch");
  const SimBranch& br = res.branches[0];
  std::vector<int> lost = lost_outputs_of(b, br);
  if (lost != v.lost_outputs) throw ReplayError("lost output set differs under replay");
  if (v.completion.size() != lost.size()) throw ReplayError("completion length mismatch");
  Tableau t = with_output_columns(b, br);
  for (size_t i = 0; i < lost.size(); ++i) {
    int c = t.col(lost[i]);
    t.reset_z(c);
    if (v.completion[i] != 'I') t.apply_pauli(v.completion[i], c);
  }
  return ideal_replay(std::move(t), code, b.output_data, v.test_state == "plus" ? 'x' : 'z',
                      v.syndrome_path);
}

std::vector<InputDamageResult> check_input_correction(const ProtocolBuild& b,
                                                      const CheckOptions& o) {
  const CodeRegistry& reg = o.codes ? *o.codes : CodeRegistry::standard();
  const CssCode& code = reg.get(b.code_name);
  std::vector<InputDamageResult> out;
  static const char* kKinds = "XYZL";
  for (int di = 0; di < int(b.input_data.size()); ++di) {
    int d = b.input_data[di];
    for (int ki = 0; ki < 4; ++ki) {
      char kind = kKinds[ki];
      InputDamageResult res;
      res.qubit = d;
      res.damage = kind;
      res.ok = true;
      res.corrected = true;
      for (bool plus : {false, true}) {
        Circuit pre(b.circuit.num_qubits(), kTestPrepBase);
        append_encode(pre, code, b.input_data, plus, "test-prep");
        int64_t wloc = pre.wait(d, "input-damage");
        Circuit full = Circuit::concat(pre, b.circuit);
        FaultSpec fs;
        fs.location = wloc;
        if (kind == 'L')
          fs.l0 = true;
        else
          fs.p0 = kind;
        RunOptions ro;
        ro.lazy_qubits = true;
        ro.retire = true;
        ro.keep_alive = b.output_data;
        ro.keep_record = false;
        ro.branch_cap = o.branch_cap;
        ro.codes = &reg;
        RunResult rr = run_circuit(full, {fs}, ro);
        res.branches += rr.branches.size();
        char basis = plus ? 'x' : 'z';
        for (const SimBranch& br : rr.branches) {
          if (!lost_outputs_of(b, br).empty()) {
            res.residual_loss = true;
            res.corrected = false;
          }
          Violation v;
          if (!assess_branch(b, code, br, basis, plus ? "plus" : "zero", &v)) {
            res.ok = false;
            if (res.detail.empty()) res.detail = v.detail;
          }
          if (res.corrected) {
            Tableau t = with_output_columns(b, br);
            std::string bits;
            for (int g = 0; g < num_generators(code); ++g) {
              Pauli p = gen_pauli(t, code, b.output_data, g);
              if (t.find_anticommuting(p) >= 0 || t.deterministic_value(p)) {
                res.corrected = false;
                break;
              }
            }
            if (res.corrected && logical_readout(t, code, b.output_data, basis) != 0)
              res.corrected = false;
          }
        }
      }
      out.push_back(std::move(res));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

const char* two_qubit_paulis_name(TwoQubitPauliSet s) {
  return s == TwoQubitPauliSet::full15 ? "full15" : "one_sided6";
}

const char* loss_combos_name(LossComboSet s) {
  return s == LossComboSet::paper5 ? "paper5" : "full9";
}

json witness_json(const Violation& v) {
  json w;
  w["test_state"] = v.test_state;
  w["branch_path"] = v.branch_path;
  w["lost_outputs"] = v.lost_outputs;
  w["completion"] = v.completion;
  w["syndrome_path"] = v.syndrome_path;
  w["detail"] = v.detail;
  return w;
}

Violation witness_from_json(const json& w) {
  Violation v;
  v.test_state = w.at("test_state").get<std::string>();
  v.branch_path = w.at("branch_path").get<std::string>();
  v.lost_outputs = w.at("lost_outputs").get<std::vector<int>>();
  v.completion = w.at("completion").get<std::string>();
  v.syndrome_path = w.at("syndrome_path").get<std::string>();
  v.detail = w.at("detail").get<std::string>();
  return v;
}

}  // namespace

std::string report_json(const CheckReport& r) {
  json j;
  j["schema"] = kSchema;
  j["engine"] = kEngine;
  j["protocol"] = r.protocol;
  j["strategy"] = r.strategy;
  j["code"] = r.code;
  j["model"] = {{"pauli", r.model.include_pauli},
                {"loss", r.model.include_loss},
                {"two_qubit_paulis", two_qubit_paulis_name(r.model.two_qubit_paulis)},
                {"loss_combos", loss_combos_name(r.model.loss_combos)}};
  j["totals"] = {{"specs", r.specs},
                 {"ok", r.ok},
                 {"violations", r.violations},
                 {"truncated", r.truncated}};
  j["timings"] = r.timings;
  if (r.timings) j["wall_time_s"] = r.wall_time_s;
  json rows = json::array();
  for (const FaultResult& fr : r.rows) {
    json row;
    row["location"] = fr.spec.location;
    row["fault"] = fr.spec.code();
    row["p0"] = std::string(1, fr.spec.p0);
    row["p1"] = std::string(1, fr.spec.p1);
    row["l0"] = fr.spec.l0;
    row["l1"] = fr.spec.l1;
    row["qubit"] = fr.spec.qubit;
    row["op"] = fr.op;
    row["tag"] = fr.tag;
    row["ok"] = fr.ok;
    row["truncated"] = fr.truncated;
    row["branches"] = fr.branches;
    if (r.timings) row["wall_time_s"] = fr.wall_time_s;
    json ws = json::array();
    for (const Violation& v : fr.witnesses) ws.push_back(witness_json(v));
    row["witnesses"] = std::move(ws);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

CheckReport report_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("schema").get<std::string>() != kSchema)
    throw std::invalid_argument("unsupported report schema");
  CheckReport r;
  r.protocol = j.at("protocol").get<std::string>();
  r.strategy = j.at("strategy").get<std::string>();
  r.code = j.at("code").get<std::string>();
  const json& m = j.at("model");
  r.model.include_pauli = m.at("pauli").get<bool>();
  r.model.include_loss = m.at("loss").get<bool>();
  r.model.two_qubit_paulis = m.at("two_qubit_paulis").get<std::string>() == "full15"
                                 ? TwoQubitPauliSet::full15
                                 : TwoQubitPauliSet::one_sided6;
  r.model.loss_combos = m.at("loss_combos").get<std::string>() == "paper5"
                            ? LossComboSet::paper5
                            : LossComboSet::full9;
  const json& t = j.at("totals");
  r.specs = t.at("specs").get<uint64_t>();
  r.ok = t.at("ok").get<uint64_t>();
  r.violations = t.at("violations").get<uint64_t>();
  r.truncated = t.at("truncated").get<uint64_t>();
  r.timings = j.at("timings").get<bool>();
  if (r.timings) r.wall_time_s = j.at("wall_time_s").get<double>();
  for (const json& row : j.at("rows")) {
    FaultResult fr;
    fr.spec.location = row.at("location").get<int64_t>();
    fr.spec.p0 = row.at("p0").get<std::string>().at(0);
    fr.spec.p1 = row.at("p1").get<std::string>().at(0);
    fr.spec.l0 = row.at("l0").get<bool>();
    fr.spec.l1 = row.at("l1").get<bool>();
    fr.spec.qubit = row.at("qubit").get<int>();
    fr.op = row.at("op").get<std::string>();
    fr.tag = row.at("tag").get<std::string>();
    fr.ok = row.at("ok").get<bool>();
    fr.truncated = row.at("truncated").get<bool>();
    fr.branches = row.at("branches").get<uint64_t>();
    if (r.timings) fr.wall_time_s = row.at("wall_time_s").get<double>();
    for (const json& w : row.at("witnesses")) fr.witnesses.push_back(witness_from_json(w));
    r.rows.push_back(std::move(fr));
  }
  return r;
}

std::string report_csv(const CheckReport& r) {
  std::ostringstream os;
  os << "location,fault,op,tag,ok,truncated,branches,witnesses\n";
  for (const FaultResult& fr : r.rows) {
    os << fr.spec.location << ',' << fr.spec.code() << ',' << fr.op << ',' << fr.tag << ','
       << (fr.ok ? 1 : 0) << ',' << (fr.truncated ? 1 : 0) << ',' << fr.branches << ','
       << fr.witnesses.size() << '\n';
  }
  return os.str();
}

std::string report_markdown(const CheckReport& r) {
  std::ostringstream os;
  os << "# Single-fault check: " << r.protocol << " / " << r.strategy << "\n\n";
  os << "- code: " << r.code << "\n";
  os << "- model: pauli=" << (r.model.include_pauli ? "yes" : "no")
     << " loss=" << (r.model.include_loss ? "yes" : "no") << " ("
     << two_qubit_paulis_name(r.model.two_qubit_paulis) << ", "
     << loss_combos_name(r.model.loss_combos) << ")\n";
  os << "- specs: " << r.specs << ", ok: " << r.ok << ", violations: " << r.violations
     << ", truncated: " << r.truncated << "\n\n";
  if (r.violations == 0 && r.truncated == 0) {
    os << "All fault locations pass.\n";
    return os.str();
  }
  os << "| location | op | tag | fault | branches | status |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const FaultResult& fr : r.rows) {
    if (fr.ok && !fr.truncated) continue;
    os << "| " << fr.spec.location << " | " << fr.op << " | " << fr.tag << " | "
       << fr.spec.code() << " | " << fr.branches << " | "
       << (fr.truncated ? "truncated" : "violation") << " |\n";
  }
  os << "\n";
  for (const FaultResult& fr : r.rows) {
    for (const Violation& v : fr.witnesses) {
      os << "## location " << fr.spec.location << " (" << fr.tag << "), fault "
         << fr.spec.code() << "\n";
      os << "- test state: " << v.test_state << "\n";
      os << "- branch path: `" << v.branch_path << "`\n";
      os << "- lost outputs:";
      for (int q : v.lost_outputs) os << ' ' << q;
      os << "\n- completion: " << (v.completion.empty() ? "-" : v.completion) << "\n";
      os << "- syndrome path: `" << v.syndrome_path << "`\n";
      os << "- " << v.detail << "\n\n";
    }
  }
  return os.str();
}

}  // namespace lossft
