#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chemotax {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Bound monitors gathered from every simulation the suite runs.
struct MonitorRecord {
  std::string run;
  double v_margin = 0, mass_margin = 0, positivity = 0;
  bool tripped = false;
};

struct AcceptanceContext {
  std::uint64_t seed = 20240601;
  std::vector<MonitorRecord> monitors;
};

CriterionResult criterion_1(AcceptanceContext& ctx);
CriterionResult criterion_2(AcceptanceContext& ctx);
CriterionResult criterion_3(AcceptanceContext& ctx);
CriterionResult criterion_4(AcceptanceContext& ctx);
CriterionResult criterion_5(AcceptanceContext& ctx);
CriterionResult criterion_6(AcceptanceContext& ctx);
CriterionResult criterion_7(AcceptanceContext& ctx);
CriterionResult criterion_8(AcceptanceContext& ctx);
CriterionResult criterion_9(AcceptanceContext& ctx);
CriterionResult criterion_10(AcceptanceContext& ctx);

// Empty selection runs all ten in order.
std::vector<CriterionResult> run_acceptance(AcceptanceContext& ctx, const std::vector<int>& which = {});

std::string summary_line(const CriterionResult& r);

}  // namespace chemotax
