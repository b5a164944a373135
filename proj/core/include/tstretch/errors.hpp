#pragma once

#include <stdexcept>
#include <string>

namespace tstretch {

// Processing errors carry a stable name; the CLI prints it on stderr and
// exits with code 2.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

#define TSTRETCH_DEFINE_ERROR(NAME)                                \
  class NAME : public Error {                                      \
  public:                                                          \
    explicit NAME(const std::string& what) : Error(#NAME, what) {} \
  }

TSTRETCH_DEFINE_ERROR(UnsupportedFormat);
TSTRETCH_DEFINE_ERROR(CorruptFile);
TSTRETCH_DEFINE_ERROR(IoError);
TSTRETCH_DEFINE_ERROR(InvalidLength);
TSTRETCH_DEFINE_ERROR(ShapeMismatch);
TSTRETCH_DEFINE_ERROR(NotAFrame);
TSTRETCH_DEFINE_ERROR(InvalidRate);
TSTRETCH_DEFINE_ERROR(InfeasibleRate);
TSTRETCH_DEFINE_ERROR(StateMismatch);
TSTRETCH_DEFINE_ERROR(InvalidArgument);

#undef TSTRETCH_DEFINE_ERROR

}  // namespace tstretch
