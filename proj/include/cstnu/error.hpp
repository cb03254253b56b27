#pragma once

#include <stdexcept>
#include <string>

namespace cstnu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text: rationals, labels, JSON documents, workflow files.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally ill-formed network (unknown ids, duplicate ids, ...).
class InvalidNetwork : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Desk-scale limits of the controllability checker were exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cstnu
