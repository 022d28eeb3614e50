#pragma once

#include <stdexcept>
#include <string>

namespace playbench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A `$NAME$` placeholder had no binding at instantiation time.
class MissingParam : public Error {
 public:
  explicit MissingParam(std::string name)
      : Error("missing template parameter: " + name), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnknownGame : public Error {
 public:
  using Error::Error;
};

class InvalidGameSpec : public Error {
 public:
  using Error::Error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class PoolTooSmall : public Error {
 public:
  using Error::Error;
};

class BadLength : public Error {
 public:
  using Error::Error;
};

class ScoringAbortedEpisode : public Error {
 public:
  using Error::Error;
};

class EmptyRun : public Error {
 public:
  using Error::Error;
};

class TooFewCommonModels : public Error {
 public:
  using Error::Error;
};

class MissingBaseline : public Error {
 public:
  using Error::Error;
};

class EmptyCandidateSet : public Error {
 public:
  using Error::Error;
};

class UnresolvableModel : public Error {
 public:
  using Error::Error;
};

class PlanError : public Error {
 public:
  using Error::Error;
};

enum class BackendErrorKind {
  kAuth,
  kRateLimitExhausted,
  kTimeout,
  kMalformedReply,
  kServerError,
  kHttpError,
  kScriptExhausted,
  kHumanTimeout,
};

const char* to_string(BackendErrorKind kind);

// Failure of a player realization (remote endpoint, script, human bridge).
// The engine records it as an aborted episode instead of propagating it.
class BackendError : public Error {
 public:
  BackendError(BackendErrorKind kind, const std::string& cause)
      : Error(std::string(to_string(kind)) + ": " + cause), kind_(kind) {}
  BackendErrorKind kind() const { return kind_; }

 private:
  BackendErrorKind kind_;
};

}  // namespace playbench
