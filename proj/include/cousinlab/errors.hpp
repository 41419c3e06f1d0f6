#pragma once

#include <stdexcept>
#include <string>

namespace cousinlab {

// Input does not match the cousinlab/1 schema (CLI exit 2).
class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A documented precondition of a core operation failed (CLI exit 3).
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A comparison could not be decided before the precision cap (CLI exit 4).
class PrecisionCapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Degree, height, budget or enumeration limits exceeded (CLI exit 5).
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace cousinlab
