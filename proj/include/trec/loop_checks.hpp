#pragma once

#include "trec/tr_engine.hpp"

namespace trec {

enum class Verdict { Pass, Fail, Indeterminate };

std::string verdict_name(Verdict v);

struct CheckResult {
  Verdict verdict = Verdict::Pass;
  long worst_pole_order = 0;    // worst offending pole order found
  std::string offending;        // first offending coefficient, if any
};

struct LoopReport {
  struct Row {
    int g, n, point;
    CheckResult linear, quadratic;
    Verdict projection;
    bool symmetry_ok;
    bool pole_bound_ok;
  };
  std::vector<Row> rows;
  std::map<std::pair<int, int>, bool> dilaton;
  bool all_pass() const;
};

// linear loop equation: (omega(z,...) + omega(sigma z,...))/dx holomorphic
CheckResult linear_loop_check(const CorrelatorStore& store, int g, int n,
                              int point_index, long order);

// quadratic loop equation at `point_index`: holomorphic for Airy-type points,
// at most a double pole for Bessel-type
CheckResult quadratic_loop_check(const CorrelatorStore& store, int g, int n,
                                 int point_index, long order);

// reconstructed omega projected through the ramification points reproduces
// the stored tensor; `extra_holomorphic` optionally injects a synthetic
// holomorphic one-form density into the first slot (a negative control: the
// projection must kill it, so the check reports Fail against the augmented
// input).
Verdict projection_check(const CorrelatorStore& store, int g, int n,
                         const Series* extra_holomorphic = nullptr);

bool symmetry_check(const CorrelatorStore& store, int g, int n);
bool pole_order_check(const CorrelatorStore& store, int g, int n);

LoopReport run_all_checks(const CorrelatorStore& store);

// flips the sign of the entry_index-th entry (sorted order) of omega_{g,n};
// throws ConfigError when out of range
void corrupt_entry(CorrelatorStore& store, int g, int n, int entry_index);

}  // namespace trec
