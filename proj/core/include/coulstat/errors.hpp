#pragma once

#include <stdexcept>
#include <string>

namespace coulstat {

// Base class for numerical failures (as opposed to bad user input, which is
// reported via std::invalid_argument). The CLI maps invalid_argument to exit
// code 1 and CoulstatError to exit code 2.
class CoulstatError : public std::runtime_error {
public:
  explicit CoulstatError(const std::string& msg) : std::runtime_error(msg) {}
};

#define COULSTAT_DEFINE_ERROR(Name)                                 \
  class Name : public CoulstatError {                               \
  public:                                                           \
    explicit Name(const std::string& msg)                           \
        : CoulstatError(std::string(#Name) + ": " + msg) {}         \
  }

// root finding / droplet determination
COULSTAT_DEFINE_ERROR(NoBracket);
COULSTAT_DEFINE_ERROR(MultipleRoots);
COULSTAT_DEFINE_ERROR(LostBranch);

// quadrature
COULSTAT_DEFINE_ERROR(QuadratureError);

// cumulants
COULSTAT_DEFINE_ERROR(DegenerateEdge);
COULSTAT_DEFINE_ERROR(OrderUnavailable);
COULSTAT_DEFINE_ERROR(GammaPole);
COULSTAT_DEFINE_ERROR(StencilOutOfRange);

// rate function / Legendre transform
COULSTAT_DEFINE_ERROR(ZeroSlope);
COULSTAT_DEFINE_ERROR(RangeTooNarrow);
COULSTAT_DEFINE_ERROR(DomainError);

// determinantal integrals and saddle points
COULSTAT_DEFINE_ERROR(Divergent);
COULSTAT_DEFINE_ERROR(NoInteriorMin);
COULSTAT_DEFINE_ERROR(MultipleMinima);

// Monte Carlo
COULSTAT_DEFINE_ERROR(PairCollision);
COULSTAT_DEFINE_ERROR(InsufficientSamples);

#undef COULSTAT_DEFINE_ERROR

} // namespace coulstat
