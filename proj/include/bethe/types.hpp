#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bethe {

using cplx = std::complex<double>;

/// Dense complex operator on the full 2^N space or on a magnon sector.
using OperatorMatrix = Eigen::MatrixXcd;
/// Amplitudes on the 2^N product basis. The zero vector is a legal value.
using StateVector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr cplx kHalfI{0.0, 0.5};

/// Out-of-range or otherwise malformed argument.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input violates an operation's documented precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Spectral parameter sits on a pole of the evaluated expression.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A self-check between two independent computations disagreed.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bethe
