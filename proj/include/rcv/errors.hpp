#pragma once

#include <stdexcept>
#include <string>

namespace rcv {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidProfile : public Error { using Error::Error; };
class UnresolvableTie : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class UnknownCandidate : public Error { using Error::Error; };
class ValidationError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };
class InvalidPrefix : public Error { using Error::Error; };
class AllPruned : public Error { using Error::Error; };
class SpaceTooLarge : public Error { using Error::Error; };
class InconsistentInput : public Error { using Error::Error; };
class EmptyOutcomeSet : public Error { using Error::Error; };

}  // namespace rcv
