#pragma once

#include <stdexcept>
#include <string>

namespace polyalab {

enum class ErrorKind {
  Dimension,
  Domain,
  InconsistentInput,
  RequiresDistinct,
  DegenerateInput,
  Grid,
  Sampling,
  Mode,
  BudgetExceeded,
  Precondition,
  Parse,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polyalab
