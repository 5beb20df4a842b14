#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustrec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with the input data: missing files, bad records, bad schema.
class DataError : public Error {
 public:
  using Error::Error;
};

class MissingFile : public DataError {
 public:
  explicit MissingFile(const std::string& path)
      : DataError("missing file: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class MalformedRecord : public DataError {
 public:
  MalformedRecord(const std::string& file, std::size_t line, const std::string& what)
      : DataError(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoFailure : public DataError {
 public:
  using DataError::DataError;
};

class SchemaVersionMismatch : public DataError {
 public:
  using DataError::DataError;
};

class WrongProvenance : public DataError {
 public:
  using DataError::DataError;
};

/// Caller supplied arguments outside an operation's contract.
class UsageError : public Error {
 public:
  using Error::Error;
};

class UnknownUser : public UsageError {
 public:
  using UsageError::UsageError;
};

class UnknownConfiguration : public UsageError {
 public:
  using UsageError::UsageError;
};

class AllWeightsZero : public UsageError {
 public:
  AllWeightsZero() : UsageError("trust fusion requires at least one positive facet weight") {}
};

class EmptyInput : public UsageError {
 public:
  using UsageError::UsageError;
};

}  // namespace trustrec
