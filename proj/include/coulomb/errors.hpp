#pragma once

#include <stdexcept>
#include <string>

namespace coulomb {

// Every failure raised by the library derives from Error; kind() is the
// machine-readable tag the CLI puts in its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

    // Validation errors are caused by bad input; the rest are numerical.
    virtual bool is_validation() const noexcept { return false; }

private:
    std::string kind_;
};

#define COULOMB_DEFINE_ERROR(Name, validation)                          \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name, what) {}  \
        bool is_validation() const noexcept override { return validation; } \
    };

COULOMB_DEFINE_ERROR(DomainError, true)
COULOMB_DEFINE_ERROR(NormalizationError, true)
COULOMB_DEFINE_ERROR(PoleError, false)
COULOMB_DEFINE_ERROR(ConvergenceError, false)
COULOMB_DEFINE_ERROR(BracketError, false)
COULOMB_DEFINE_ERROR(GridError, false)
COULOMB_DEFINE_ERROR(InconclusiveError, false)
COULOMB_DEFINE_ERROR(EigenvalueHit, false)
COULOMB_DEFINE_ERROR(NotAnEigenpair, false)

#undef COULOMB_DEFINE_ERROR

}  // namespace coulomb
