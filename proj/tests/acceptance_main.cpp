// Acceptance harness: runs every top-level requirement at its stated window
// and tolerance (all tolerances are zero; the arithmetic is exact rationals)
// and prints one pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "k3/errors.hpp"
#include "k3/suites.hpp"

using namespace k3;

namespace {

struct Criterion {
  int id;
  std::string label;
  bool pass;
  std::string note;
};

std::vector<Criterion> results;

void record(int id, const std::string& label, bool pass, const std::string& note = "") {
  results.push_back({id, label, pass, note});
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << label;
  if (!note.empty()) std::cout << "  -- " << note;
  std::cout << "\n" << std::flush;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string failing_checks(const SuiteReport& rep) {
  std::string out;
  for (const auto& c : rep.checks)
    if (!c.pass) {
      if (!out.empty()) out += "; ";
      out += c.name;
      if (!c.detail.empty()) out += " (" + c.detail + ")";
    }
  return out;
}

bool subset_pass(const SuiteReport& rep, const std::string& prefix) {
  for (const auto& c : rep.checks)
    if (c.name.rfind(prefix, 0) == 0 && !c.pass) return false;
  return true;
}

SuiteConfig default_config() { return SuiteConfig{}; }

}  // namespace

int main(int argc, char** argv) {
  std::optional<std::string> golden;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--golden") golden = argv[i + 1];

  // 1 & 2: positive-sector brackets and the lowering relation, default window
  {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep = run_suite("brackets-positive", default_config());
    double dt = seconds_since(t0);
    bool c1 = subset_pass(rep, "[L[");
    bool in_time = dt < 60.0;
    record(1, "[L_m, L_n] = (n-m) L_{m+n} for -1 <= m,n <= 4, exact on the window",
           c1 && in_time,
           c1 ? ("suite wall time " + std::to_string(dt) + " s" +
                 (in_time ? "" : " exceeds 60 s"))
              : failing_checks(rep));
    bool c2 = subset_pass(rep, "[R[-1]");
    record(2, "[R_{-1}, calL_k] = (k+1) calL_{k-1} for -1 <= k <= 6, ranks 1,2,3", c2,
           c2 ? "" : failing_checks(rep));
  }

  // 3: mixed sector with the central constant
  {
    SuiteReport rep = run_suite("brackets-mixed", default_config());
    Rat c22 = Rat((2 * 2 * 2 - 2) * 24, 12);
    Rat c33 = Rat((3 * 3 * 3 - 3) * 24, 12);
    bool constants = (c22 == 12) && (c33 == 48);
    record(3,
           "[L_l, L_{-k}] = (-l-k) L_{l-k} + ((k^3-k)/12)*24*delta_{kl}, central constants 12 "
           "and 48",
           rep.all_pass() && constants,
           rep.all_pass() ? (constants ? "" : "central constants off") : failing_checks(rep));
  }

  // 4: negative sector
  {
    SuiteReport rep = run_suite("brackets-negative", default_config());
    record(4, "[L_{-l}, L_{-k}] = (l-k) L_{-l-k} for 1 < l,k <= 5", rep.all_pass(),
           failing_checks(rep));
  }

  // 5: vanishing integrals on the rank model
  {
    auto t0 = std::chrono::steady_clock::now();
    SuiteConfig cfg = default_config();
    cfg.ranks = {1, 2, 3, 5};
    cfg.n_random = 100;
    if (golden) cfg.golden_path = golden;
    SuiteReport rep = run_suite("dim2-constraints", cfg);
    double dt = seconds_since(t0);
    bool vanish = subset_pass(rep, "∫ calL[k] D = 0");
    bool in_time = dt < 300.0;
    record(5, "rank-model integrals of calL_k D vanish, r in {1,2,3,5}, -1 <= k <= 8, 100 per pair",
           vanish && in_time,
           vanish ? ("wall time " + std::to_string(dt) + " s" + (in_time ? "" : " exceeds 300 s"))
                  : failing_checks(rep));

    // 6: closed-form realization and integral tables
    bool tables = subset_pass(rep, "generator realization table") &&
                  subset_pass(rep, "integral tables") &&
                  subset_pass(rep, "golden integral table") &&
                  subset_pass(rep, "rank reduction matches the rank-one model");
    record(6, "realization table and both integral tables reproduced for r in {1,2,3,5,7}, N <= 6",
           tables, tables ? "" : failing_checks(rep));
  }

  // 7: pairing table and the Gram-equality reduction
  {
    SuiteReport pairs = run_suite("pairing-table", default_config());
    SuiteReport univ = run_suite("universality", default_config());
    bool ok = pairs.all_pass() && univ.all_pass();
    record(7, "eight Mukai pairings for 50 random (r,D,n) and the rank-reduction Gram equality",
           ok, ok ? "" : failing_checks(pairs) + failing_checks(univ));
  }

  // 8: rank-zero swap and the involution identities
  {
    SuiteReport rep = run_suite("rank0-reduction", default_config());
    record(8, "rank-zero swap Gram equality (50 samples) and M-involution identities, k <= 5",
           rep.all_pass(), failing_checks(rep));
  }

  // 9: normalization machinery
  {
    SuiteReport rep = run_suite("normalization", default_config());
    std::string eta_note;
    for (const auto& c : rep.checks)
      if (c.name == "eta convention selected by twist test") eta_note = c.detail;
    record(9,
           "R_{-1}∘Linv = 0, both Linv expansions agree, J-commutation, twist commutations, eta "
           "convention selected",
           rep.all_pass(), rep.all_pass() ? eta_note : failing_checks(rep));
  }

  // 10: robustness under an alternate non-degenerate Gram
  {
    std::string alt_path = "acceptance_alt_gram.json";
    {
      std::ofstream out(alt_path);
      GramH11 g = alternate_gram();
      out << "{\"gram_h11\": [";
      for (int i = 0; i < kH11Size; ++i) {
        out << (i ? "," : "") << "[";
        for (int j = 0; j < kH11Size; ++j)
          out << (j ? "," : "") << '"' << rat_to_string(g[i][j]) << '"';
        out << "]";
      }
      out << "]}";
    }
    bool ok = true;
    std::string note;
    for (const std::string& name : {std::string("brackets-positive"),
                                    std::string("brackets-negative"),
                                    std::string("brackets-mixed"),
                                    std::string("normalization")}) {
      SuiteReport def = run_suite(name, default_config());
      SuiteConfig alt_cfg = default_config();
      alt_cfg.gram_path = alt_path;
      SuiteReport alt = run_suite(name, alt_cfg);
      bool same = def.checks.size() == alt.checks.size();
      if (same)
        for (size_t i = 0; i < def.checks.size(); ++i)
          same = same && (def.checks[i].pass == alt.checks[i].pass);
      if (!(def.all_pass() && alt.all_pass() && same)) {
        ok = false;
        note += name + " differs between grams (" + failing_checks(def) + " | " +
                failing_checks(alt) + "); ";
      }
    }
    // the rank-model suite's Gram behavior is reported, never asserted
    {
      SuiteConfig alt_cfg = default_config();
      alt_cfg.gram_path = alt_path;
      alt_cfg.ranks = {1, 2, 3, 5};
      alt_cfg.n_random = 50;
      SuiteReport alt = run_suite("dim2-constraints", alt_cfg);
      note += alt.all_pass() ? "rank-model suite: no Gram sensitivity detected"
                             : ("rank-model suite Gram-sensitive: " + failing_checks(alt));
    }
    std::remove(alt_path.c_str());
    record(10, "bracket and normalization suites pass identically under an alternate Gram", ok,
           note);
  }

  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  std::cout << (all ? "acceptance: PASS" : "acceptance: FAIL") << " (" << results.size()
            << " criteria)\n";
  return all ? 0 : 1;
}
