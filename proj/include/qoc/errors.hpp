#pragma once

#include <stdexcept>
#include <string>

namespace qoc {

/// Propagation produced non-finite amplitudes; carries the offending step.
class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(const std::string& what, int time_index)
      : std::runtime_error(what + " at time index " +
                           std::to_string(time_index)),
        time_index_(time_index) {}
  int time_index() const { return time_index_; }

 private:
  int time_index_;
};

/// Iterative relaxation failed to meet its tolerance; carries the last delta.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_delta)
      : std::runtime_error(what + " (last energy delta " +
                           std::to_string(last_delta) + ")"),
        last_delta_(last_delta) {}
  double last_delta() const { return last_delta_; }

 private:
  double last_delta_;
};

}  // namespace qoc
