#pragma once

#include <stdexcept>
#include <string>

namespace fcprobe {

// Base of every error raised by the library. Callers that only care about
// "bad input" vs "bad file system" can catch Error and IoError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Buffer length or grid shape does not match the architecture.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Variable, column, or channel index outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid request: overlapping masks, non-divisible windows,
// asymmetric matrices, malformed JSON fields.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input that is well-formed but numerically unusable (e.g. zero variance).
class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(std::string label, const std::string& what)
      : Error(what), label_(std::move(label)) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Weight-file decoding failures.
class FormatError : public Error {
 public:
  using Error::Error;
};

class BadMagicError : public FormatError {
 public:
  using FormatError::FormatError;
};

class CrcMismatchError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TensorError : public FormatError {
 public:
  TensorError(std::string tensor, const std::string& what)
      : FormatError(what), tensor_(std::move(tensor)) {}
  const std::string& tensor() const noexcept { return tensor_; }

 private:
  std::string tensor_;
};

class MissingTensorError : public TensorError {
 public:
  explicit MissingTensorError(const std::string& tensor)
      : TensorError(tensor, "missing tensor \"" + tensor + "\"") {}
};

class TensorShapeError : public TensorError {
 public:
  TensorShapeError(const std::string& tensor, const std::string& detail)
      : TensorError(tensor, "shape mismatch for tensor \"" + tensor + "\": " + detail) {}
};

}  // namespace fcprobe
