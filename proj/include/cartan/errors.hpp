#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

// Every failure raised by the library derives from cartan::error; kind() is
// the stable name used in CLI reports.
class error : public std::runtime_error {
public:
  error(const char* kind, const std::string& what)
      : std::runtime_error(std::string(kind) + ": " + what), kind_(kind) {}

  const char* kind() const noexcept { return kind_; }

private:
  const char* kind_;
};

#define CARTAN_DEFINE_ERROR(name)                                            \
  class name : public error {                                                \
  public:                                                                    \
    explicit name(const std::string& what) : error(#name, what) {}           \
  }

CARTAN_DEFINE_ERROR(StructureError);
CARTAN_DEFINE_ERROR(SystemMismatch);
CARTAN_DEFINE_ERROR(RadicalAdditionMismatch);
CARTAN_DEFINE_ERROR(NotRepresentable);
CARTAN_DEFINE_ERROR(NotPositive);
CARTAN_DEFINE_ERROR(NotFree);
CARTAN_DEFINE_ERROR(HypothesisViolated);
CARTAN_DEFINE_ERROR(IndexOutOfRange);
CARTAN_DEFINE_ERROR(ResourceBound);
CARTAN_DEFINE_ERROR(InvalidWitness);
CARTAN_DEFINE_ERROR(PreconditionFailed);
CARTAN_DEFINE_ERROR(SupportOverlap);
CARTAN_DEFINE_ERROR(EmptyShape);
CARTAN_DEFINE_ERROR(InvalidCastle);
CARTAN_DEFINE_ERROR(InvalidCastleData);
CARTAN_DEFINE_ERROR(NotNormalizerPreserving);
CARTAN_DEFINE_ERROR(NotOrderZero);
CARTAN_DEFINE_ERROR(ParseError);

#undef CARTAN_DEFINE_ERROR

}  // namespace cartan
