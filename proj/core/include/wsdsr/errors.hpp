#pragma once

#include <stdexcept>
#include <string>

namespace wsdsr {

/// Thrown when a caller violates a documented precondition.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wsdsr
