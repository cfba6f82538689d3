#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fovgmres {

/// Base class for all numerical failures. The name identifies the failure
/// category and is stable across releases (the CLI prints it verbatim).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define FOVGMRES_DEFINE_ERROR(Name)                                \
  struct Name : Error {                                            \
    explicit Name(const std::string& w) : Error(#Name, w) {}       \
  }

FOVGMRES_DEFINE_ERROR(DimensionMismatch);
FOVGMRES_DEFINE_ERROR(NotHermitian);
FOVGMRES_DEFINE_ERROR(NotSkew);
FOVGMRES_DEFINE_ERROR(NotPositiveDefinite);
FOVGMRES_DEFINE_ERROR(NotPd);
FOVGMRES_DEFINE_ERROR(NonFinite);
FOVGMRES_DEFINE_ERROR(Breakdown);
FOVGMRES_DEFINE_ERROR(SingularProjector);
FOVGMRES_DEFINE_ERROR(SingularCore);
FOVGMRES_DEFINE_ERROR(OddRequest);
FOVGMRES_DEFINE_ERROR(RankLoss);
FOVGMRES_DEFINE_ERROR(IncompatibleVariant);
FOVGMRES_DEFINE_ERROR(MismatchedOperators);
FOVGMRES_DEFINE_ERROR(NonPositiveRealPart);
FOVGMRES_DEFINE_ERROR(DegenerateRectangle);
FOVGMRES_DEFINE_ERROR(InsideDisk);
FOVGMRES_DEFINE_ERROR(TruncationTooShort);
FOVGMRES_DEFINE_ERROR(NewtonDivergence);
FOVGMRES_DEFINE_ERROR(IoError);
FOVGMRES_DEFINE_ERROR(FormatError);

#undef FOVGMRES_DEFINE_ERROR

}  // namespace fovgmres
