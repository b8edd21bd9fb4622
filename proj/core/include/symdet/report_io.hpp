#pragma once

#include "symdet/engine.hpp"
#include "symdet/exprio.hpp"

namespace symdet {

// Serializable view of a pipeline report.
ResultFile report_to_result(const PipelineReport& report);

} // namespace symdet
