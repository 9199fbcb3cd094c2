#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fjsig {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMatrixError : Error {
  explicit SingularMatrixError(const std::string& msg = "matrix is numerically singular")
      : Error(msg) {}
};

struct ZeroMassSignalError : Error {
  explicit ZeroMassSignalError(const std::string& msg = "signal is never sent") : Error(msg) {}
};

/// Thrown by iterate_dynamics when max_rounds is exhausted; carries the last iterate.
struct NotConvergedError : Error {
  std::vector<double> last_iterate;
  int rounds;
  NotConvergedError(std::vector<double> z, int r)
      : Error("opinion dynamics did not converge within the round limit"),
        last_iterate(std::move(z)),
        rounds(r) {}
};

struct NoConsensusError : Error {
  explicit NoConsensusError(const std::string& msg = "influence powers do not reach consensus")
      : Error(msg) {}
};

struct WrongObjectiveKindError : Error {
  explicit WrongObjectiveKindError(const std::string& msg = "objective kind not supported here")
      : Error(msg) {}
};

struct WrongStateCountError : Error {
  explicit WrongStateCountError(const std::string& msg = "operation requires two states")
      : Error(msg) {}
};

struct TooLargeError : Error {
  explicit TooLargeError(const std::string& msg = "input exceeds the size cap") : Error(msg) {}
};

struct InfeasibleGridError : Error {
  explicit InfeasibleGridError(const std::string& msg = "prior not in the hull of grid points")
      : Error(msg) {}
};

struct NumericalFailureError : Error {
  explicit NumericalFailureError(const std::string& msg = "numerical failure") : Error(msg) {}
};

}  // namespace fjsig
