#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NCG_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

NCG_DEFINE_ERROR(DimensionMismatch);
NCG_DEFINE_ERROR(NotClosed);
NCG_DEFINE_ERROR(NoUnit);
NCG_DEFINE_ERROR(NonCommutative);
NCG_DEFINE_ERROR(DegenerateDraw);
NCG_DEFINE_ERROR(BadParameters);
NCG_DEFINE_ERROR(ModeMismatch);
NCG_DEFINE_ERROR(NotOnTorus);
NCG_DEFINE_ERROR(VanishingTrace);
NCG_DEFINE_ERROR(NotUnitary);
NCG_DEFINE_ERROR(MembershipViolated);
NCG_DEFINE_ERROR(BadHopping);
NCG_DEFINE_ERROR(ParseError);

#undef NCG_DEFINE_ERROR

}  // namespace ncg
