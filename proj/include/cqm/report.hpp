#pragma once

#include <string>

#include "cqm/orbit.hpp"
#include "cqm/suites.hpp"

namespace cqm::harness {

enum class Format { Text, Json };

// JSON carries no wall time, so fixed inputs give byte-identical output.
std::string emit_report(const SuiteReport& r, Format f);
// 0 when every check passes, 1 otherwise.
int exit_code(const SuiteReport& r);

std::string emit_trajectory(const orbit::Trajectory& t, Format f);

}  // namespace cqm::harness
