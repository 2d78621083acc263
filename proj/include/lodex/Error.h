#pragma once

#include <stdexcept>
#include <string>

namespace lodex {

// Base class of every error raised by the library. Each subclass corresponds
// to one failure mode of the public operations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LODEX_DECLARE_ERROR(Name) \
  class Name : public Error {     \
   public:                        \
    using Error::Error;           \
  }

LODEX_DECLARE_ERROR(IoError);
LODEX_DECLARE_ERROR(EmptySnapshot);
LODEX_DECLARE_ERROR(EmptyDataset);
LODEX_DECLARE_ERROR(KindMismatch);
LODEX_DECLARE_ERROR(EmptyUniverse);
LODEX_DECLARE_ERROR(UniverseMismatch);
LODEX_DECLARE_ERROR(EmptyGold);
LODEX_DECLARE_ERROR(ZeroGoldKeys);
LODEX_DECLARE_ERROR(LengthMismatch);
LODEX_DECLARE_ERROR(TooFewRows);
LODEX_DECLARE_ERROR(InvalidSeries);
LODEX_DECLARE_ERROR(FormatError);

#undef LODEX_DECLARE_ERROR

}  // namespace lodex
