#ifndef SITECALC_SUITES_HPP
#define SITECALC_SUITES_HPP

#include <optional>
#include <string>
#include <vector>

#include "sitecalc/generators.hpp"
#include "sitecalc/sheaf.hpp"
#include "sitecalc/topology.hpp"

namespace sitecalc {

// Recognize generator outputs structurally, so that encoding-level oracles
// (surjectivity, quotient maps) apply to parsed files as well.
std::optional<FinSetCategory> detect_finset_skeleton(const FinCat& c,
                                                     const Limits& lim = {});
std::optional<FinTopCategory> detect_fintop(const FinCat& c,
                                            const Limits& lim = {});

struct SuiteResult {
  std::string id;
  enum class Status { Pass, Fail, Skip } status = Status::Skip;
  std::string detail;
};

// All suite ids, in canonical output order.
std::vector<std::string> suite_ids();

// Runs the chosen suites (all when ids is empty) against one category.
// jobs > 1 evaluates suites concurrently; results stay in canonical order.
std::vector<SuiteResult> run_suites(const FinCat& c,
                                    const std::vector<std::string>& ids,
                                    int jobs = 1, const Limits& lim = {},
                                    const Budget& budget = budget_from_env());

std::string format_suite_line(const SuiteResult& r, bool structured);

}  // namespace sitecalc

#endif
