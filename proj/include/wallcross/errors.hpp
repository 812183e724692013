#pragma once

#include <stdexcept>
#include <string>

namespace wallcross {

// Every failure carries a stable name so the CLI can report it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define WALLCROSS_ERROR(Type)                                          \
    class Type : public Error {                                        \
    public:                                                            \
        explicit Type(const std::string& detail) : Error(#Type, detail) {} \
    }

WALLCROSS_ERROR(SingularBasis);
WALLCROSS_ERROR(NotAHyperplane);
WALLCROSS_ERROR(EmptyQuotient);
WALLCROSS_ERROR(NotDeligneMumford);
WALLCROSS_ERROR(NotAdjacent);
WALLCROSS_ERROR(NotCrepant);
WALLCROSS_ERROR(InconsistentClassification);
WALLCROSS_ERROR(NotAdjacentAnticones);
WALLCROSS_ERROR(CrepancyViolation);
WALLCROSS_ERROR(PoleCollision);
WALLCROSS_ERROR(IncompatibleLifts);
WALLCROSS_ERROR(NonLaurent);
WALLCROSS_ERROR(ContourTooClose);
WALLCROSS_ERROR(NonConvergent);
WALLCROSS_ERROR(ResonantSample);
WALLCROSS_ERROR(PreconditionFailed);
WALLCROSS_ERROR(ConfigError);

#undef WALLCROSS_ERROR

}  // namespace wallcross
