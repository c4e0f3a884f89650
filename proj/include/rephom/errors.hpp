#pragma once

#include <stdexcept>
#include <string>

namespace rephom {

enum class ErrorKind {
    OrderMismatch,
    NonUnit,
    Divergent,
    InsufficientOrder,
    Pole,
    Unsupported,
    DimensionMismatch,
    InternalConsistency,
};

class MathError : public std::runtime_error {
public:
    MathError(ErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace rephom
