#pragma once

#include <stdexcept>
#include <string>

namespace wamsley {

enum class ErrorKind {
    UndefinedValuation,
    NotInvertible,
    NotRelevantPrime,
    InvalidInstance,
    Budget,
    Unsupported,
    Formula,
    Construction,
    Extension,
    NotAbelian,
    NotNormal,
    Enumeration,
    Usage,
    Parse,
    Incomplete,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace wamsley
