#pragma once

#include <iosfwd>
#include <string>

#include "phoneagent/eval/benchmark.hpp"

namespace phoneagent {

/// Interactive review of one recorded trajectory. Shows each step and asks
/// whether the action (and, when there was one, the reflection) was right,
/// then asks after how many steps each rubric item held. Prompts go to
/// `out`; answers are read line by line from `in`. Invalid answers are
/// asked again. Throws DecodeError if `trajectory` is malformed or input
/// ends early.
AnnotationRecord annotate_trajectory(const Json& trajectory, const RubricSheet& rubrics, const std::string& model,
                                     std::istream& in, std::ostream& out);

}  // namespace phoneagent
