#pragma once

#include <stdexcept>
#include <string>

namespace qortho {

enum class ErrorKind {
    Parse,
    LatticeMismatch,
    ZeroPolynomial,
    BasisGap,
    NotOrthogonalSequence,
    NotReal,
    Degenerate,
    InvalidSpec,
    NotOrthogonal,
    WeightUndefined,
    NotPositiveDefinite,
    Domain,
    Io,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qortho
