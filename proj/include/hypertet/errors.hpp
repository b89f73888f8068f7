#pragma once

#include <stdexcept>
#include <string>

namespace hypertet {

// Bad input: parameter out of range, malformed argument, broken precondition.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotCoprime : DomainError {
  using DomainError::DomainError;
};

// A straight line of the tiling passed exactly through a tiling vertex.
struct VertexHit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonAdjacentFaces : DomainError {
  using DomainError::DomainError;
};

// Something that a theorem says cannot happen did happen.
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SegmentEscapesDevelopment : InvariantFailure {
  using InvariantFailure::InvariantFailure;
};

struct StructureViolation : InvariantFailure {
  using InvariantFailure::InvariantFailure;
};

} // namespace hypertet
