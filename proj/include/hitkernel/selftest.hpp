#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hitkernel/normalizer.hpp"

namespace hitkernel {

struct PropertyResult {
  std::string group;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few counterexamples
};

struct SelftestOptions {
  std::uint64_t seed = 20240601;
  std::size_t generated_terms = 500;
  std::size_t oracle_programs = 60;
  std::size_t defeq_triples = 200;
  EvalOptions eval;                       // kernel configuration under test
  std::vector<std::string> corpus_files;  // checked for subject reduction when non-empty
};

/// Runs the kernel property groups: normalization idempotence, oracle agreement, definitional
/// equality laws (equivalence, J and qelim computation), subject reduction.
std::vector<PropertyResult> run_selftest(const SelftestOptions& options);

}  // namespace hitkernel
