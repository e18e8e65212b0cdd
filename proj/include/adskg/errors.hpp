#pragma once

#include <stdexcept>
#include <string>

namespace adskg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define ADSKG_ERROR(Name)                                        \
  struct Name : Error {                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

ADSKG_ERROR(PoleError);
ADSKG_ERROR(DomainError);
ADSKG_ERROR(ConvergenceError);
ADSKG_ERROR(IndexError);
ADSKG_ERROR(BfViolation);
ADSKG_ERROR(EvenDimension);
ADSKG_ERROR(CapabilityError);
ADSKG_ERROR(WindowError);
ADSKG_ERROR(BoundaryProximity);
ADSKG_ERROR(SingularPoint);
ADSKG_ERROR(ExceptionalBranch);
ADSKG_ERROR(DegenerateBasis);
ADSKG_ERROR(BandLimitExceeded);
ADSKG_ERROR(RadialNodeError);
ADSKG_ERROR(IntegerNu);
ADSKG_ERROR(MagicFrequencyBlind);
ADSKG_ERROR(BasisMismatch);
ADSKG_ERROR(UnsupportedDimension);
ADSKG_ERROR(ProjectionResidual);
ADSKG_ERROR(WindowOverflow);
ADSKG_ERROR(ParseError);

#undef ADSKG_ERROR

}  // namespace adskg
