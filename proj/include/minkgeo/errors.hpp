#pragma once

#include <stdexcept>
#include <string>

namespace minkgeo {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frame construction failed; the CLI maps these to a distinct exit code.
class FrameError : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public FrameError {
 public:
  using FrameError::FrameError;
};

class NotUnit : public FrameError {
 public:
  using FrameError::FrameError;
};

class DependentFrame : public FrameError {
 public:
  using FrameError::FrameError;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedExponent : public Error {
 public:
  using Error::Error;
};

class NotAMetric : public Error {
 public:
  using Error::Error;
};

/// Thrown by strict ellipse conversions when the frame is orthogonal
/// (the level set degenerates to a Euclidean circle).
class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace minkgeo
