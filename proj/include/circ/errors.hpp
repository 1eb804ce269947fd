#ifndef CIRC_ERRORS_HPP
#define CIRC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace circ {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TruncationTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotNormalized : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroMeanOccupation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositiveInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedDetuning : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroProbabilityBranch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace circ

#endif
