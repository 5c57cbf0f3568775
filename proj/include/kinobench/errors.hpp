#pragma once

#include <stdexcept>
#include <string>

namespace kinobench {

/// A caller broke an operation's precondition (malformed control, invalid start state, ...).
class ContractViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Internal data does not fit together (scene/state mismatch, corrupt trace, unsupported shape pair).
class StructuralError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class SceneErrorKind
{
  Schema,
  DuplicateId,
  OutOfBounds,
  Interpenetration,
};

/// Scene document rejected at load time. `path()` names the offending field, e.g. `bodies[2].id`.
class SceneError : public std::runtime_error
{
public:
  SceneError(SceneErrorKind kind, std::string path, std::string const &message)
    : std::runtime_error(path + ": " + message)
    , kind_(kind)
    , path_(std::move(path))
  {
  }

  SceneErrorKind kind() const { return kind_; }
  std::string const &path() const { return path_; }

private:
  SceneErrorKind kind_;
  std::string path_;
};

} // namespace kinobench
