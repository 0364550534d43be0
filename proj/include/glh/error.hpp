#pragma once

#include <stdexcept>
#include <string>

namespace glh {

// Base of every exception the library throws. The C API maps each subclass
// onto a glh_status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (bad index, mismatched generator
// count, evaluation at a pole, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

// A formal polynomial product would need a monomial above the degree cap.
class DegreeOverflowError : public Error {
 public:
  using Error::Error;
};

// Malformed structured-text input; the message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace glh
