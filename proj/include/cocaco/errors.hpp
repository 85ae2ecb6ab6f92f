#pragma once

#include <stdexcept>
#include <string>

namespace cocaco {

// A physical or numeric parameter lies outside its valid domain.
class ParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two feature vectors (or a vector and a store) disagree on dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Cosine similarity against a zero vector.
class UndefinedAngleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cocaco
