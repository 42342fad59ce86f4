#pragma once

#include <stdexcept>
#include <string>

namespace vicsim {

// Base class for every error raised by the library. Each failure mode gets
// its own subclass so callers can catch exactly what they can handle.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

class UnsupportedParams : public Error {
 public:
  using Error::Error;
};

class ZeroTrace : public Error {
 public:
  using Error::Error;
};

class NotAState : public Error {
 public:
  using Error::Error;
};

class NotXForm : public Error {
 public:
  using Error::Error;
};

}  // namespace vicsim
