#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace jra {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Instance construction or generation rejected (e.g. n < 2, bad area).
class InvalidInstanceError : public Error {
public:
  using Error::Error;
};

/// Cost queried for a pair that no feasible edge may join
/// (item-item, placeholder-placeholder, or placeholder->item).
class NonConnectableError : public Error {
public:
  using Error::Error;
};

/// JSON file does not match the documented schema.
class SchemaError : public Error {
public:
  using Error::Error;
};

/// A tour or edge set violates a structural invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A node has degree different from 2 where 2 is required.
class DegreeError : public Error {
public:
  DegreeError(const std::string& msg, int node) : Error(msg), node_(node) {}
  int node() const { return node_; }

private:
  int node_;
};

/// An edge set decomposes into more than one cycle where one was required.
class SubtourError : public Error {
public:
  SubtourError(const std::string& msg, std::vector<int> component_pairs)
      : Error(msg), component_pairs_(std::move(component_pairs)) {}
  /// Sizes of the connected components, in pairs, ascending.
  const std::vector<int>& component_pairs() const { return component_pairs_; }

private:
  std::vector<int> component_pairs_;
};

/// No assignment or tour satisfies the active constraints.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// Numeric argument outside its mathematical domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A reduction left fewer than two effective pairs to solve.
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// A recovered solution failed validation; indicates a bug in the
/// reduction bookkeeping, never a property of the input.
class InternalConsistencyError : public Error {
public:
  using Error::Error;
};

}  // namespace jra
