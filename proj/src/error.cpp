#include "probekit/error.hpp"

#include <utility>

namespace probekit {

InputError::InputError(const std::string& what, std::size_t line)
    : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

InfeasibleError::InfeasibleError(std::string control, const std::string& what)
    : Error("infeasible " + control + ": " + what), control_(std::move(control)) {}

}  // namespace probekit
