#ifndef THETA2_ACCEPTANCE_HPP
#define THETA2_ACCEPTANCE_HPP

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace theta2 {

// End-to-end verification suite.  Every criterion is evaluated with pinned
// tolerances; randomized parts draw deterministically from the seed, and the
// serialized report contains no volatile data, so equal seeds give
// byte-identical reports.
struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  nlohmann::json details;
};

struct AcceptanceReport {
  std::uint64_t seed;
  std::vector<CriterionResult> criteria;
  bool all_pass;

  nlohmann::json to_json() const;
};

// Criteria 1-13 (the deterministic computations).
std::vector<CriterionResult> run_core_criteria(std::uint64_t seed);

// Criteria 1-13 plus the report-determinism criterion, which recomputes the
// core set and compares serialized bytes.
AcceptanceReport run_acceptance(std::uint64_t seed);

} // namespace theta2

#endif
