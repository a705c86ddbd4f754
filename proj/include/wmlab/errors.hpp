#pragma once

#include <stdexcept>
#include <string>

namespace wmlab {

/// Base class for every failure raised by the library. The `kind()` string
/// is stable and used by the CLI when it names a failing check.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define WMLAB_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

WMLAB_DEFINE_ERROR(InvalidArgument);
WMLAB_DEFINE_ERROR(BoundaryLeak);
WMLAB_DEFINE_ERROR(NonHermitianInput);
WMLAB_DEFINE_ERROR(OriginUndefined);
WMLAB_DEFINE_ERROR(AllZero);
WMLAB_DEFINE_ERROR(GridMismatch);
WMLAB_DEFINE_ERROR(GridTooNarrow);
WMLAB_DEFINE_ERROR(NormDrift);
WMLAB_DEFINE_ERROR(OutOfTruncation);
WMLAB_DEFINE_ERROR(DegreeOverflow);
WMLAB_DEFINE_ERROR(DomainError);
WMLAB_DEFINE_ERROR(IoError);

#undef WMLAB_DEFINE_ERROR

}  // namespace wmlab
