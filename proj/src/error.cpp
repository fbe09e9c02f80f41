#include "rx2dpl/error.hpp"

namespace rx2dpl {

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error("syntax error at " + std::to_string(position) + ": " + message),
      position_(position),
      detail_(message) {}

UnsupportedFeature::UnsupportedFeature(std::size_t position, const std::string& feature)
    : SyntaxError(position, "unsupported feature: " + feature), feature_(feature) {}

StepLimitExceeded::StepLimitExceeded(std::size_t budget)
    : Error("backtracking step budget of " + std::to_string(budget) + " exceeded"),
      budget_(budget) {}

NonRegularFeature::NonRegularFeature(const std::string& feature)
    : Error("feature has no finite-automaton form: " + feature), feature_(feature) {}

EmptyLanguage::EmptyLanguage() : Error("language is empty within the length bound") {}

EmptyPattern::EmptyPattern() : Error("pattern has no fragments") {}

DplSyntaxError::DplSyntaxError(std::size_t position, const std::string& message)
    : Error("DPL syntax error at " + std::to_string(position) + ": " + message),
      position_(position),
      detail_(message) {}

}  // namespace rx2dpl
