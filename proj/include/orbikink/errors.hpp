#pragma once

#include <stdexcept>
#include <string>

namespace orbikink {

// Malformed or inconsistent user input: unknown labels, non-consecutive
// words, endpoint mismatches.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its domain (e.g. turning at a vertex that
// is not trivalent).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Unparseable documents (JSON syntax, walk grammar).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed walk whose cyclic reduction is empty.
class Contractible : public std::runtime_error {
 public:
  Contractible() : std::runtime_error("closed walk is contractible") {}
};

// The section iota is undefined on nontrivial self-inverse classes.
class OrderTwoClass : public std::runtime_error {
 public:
  OrderTwoClass() : std::runtime_error("orbifold class has order two; iota is undefined there") {}
};

class NotFlippable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbikink
