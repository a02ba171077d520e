#pragma once

#include <stdexcept>
#include <string>

namespace pac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PAC_DEFINE_ERROR(Name)        \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  };

PAC_DEFINE_ERROR(DomainError)           // point outside a chart box
PAC_DEFINE_ERROR(UsageError)            // mixed manifolds, bad slot lists
PAC_DEFINE_ERROR(UnsupportedError)      // form degree not implemented
PAC_DEFINE_ERROR(DegeneracyError)       // singular metric at a sample
PAC_DEFINE_ERROR(PlaneDegeneracyError)  // null 2-plane in sectional curvature
PAC_DEFINE_ERROR(DerivativeDepthError)  // jet order exhausted
PAC_DEFINE_ERROR(StructureError)        // axioms or signature violated
PAC_DEFINE_ERROR(ConstructionError)     // compatible metric construction failed
PAC_DEFINE_ERROR(NullPivotError)        // phi-basis hit only null vectors
PAC_DEFINE_ERROR(NotParacontactError)   // F != d(eta) where it is required
PAC_DEFINE_ERROR(NotSkewError)          // N1 not totally skew-symmetric
PAC_DEFINE_ERROR(NotKillingError)       // xi not a Killing field
PAC_DEFINE_ERROR(PositivityError)       // gauge function not positive
PAC_DEFINE_ERROR(ParameterError)        // invalid D-homothety parameter
PAC_DEFINE_ERROR(DegenerateScaleError)  // scal == 2n in einsteinize
PAC_DEFINE_ERROR(PreconditionError)     // other unmet hypotheses
PAC_DEFINE_ERROR(LookupError)           // unknown zoo id

#undef PAC_DEFINE_ERROR

}  // namespace pac
