#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rmt {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

// Named tolerance defaults. Callers may override per call where an
// operation takes an explicit tolerance.
struct Tolerances {
  double pole_eps = 1e-12;     // distance at which a pole is reported
  double zero_floor = 1e-300;  // modulus below which a path value counts as zero
  double lattice_eps = 1e-8;   // distance to the 2*pi*i*k lattice for z(x)
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error(what) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what) : Error(what) {}
};

class BranchNotClosed : public Error {
 public:
  explicit BranchNotClosed(const std::string& what) : Error(what) {}
};

class ZeroOnPath : public Error {
 public:
  explicit ZeroOnPath(const std::string& what) : Error(what) {}
};

class DegenerateSpectrum : public Error {
 public:
  explicit DegenerateSpectrum(const std::string& what) : Error(what) {}
};

class NearEigenvalue : public Error {
 public:
  explicit NearEigenvalue(const std::string& what) : Error(what) {}
};

class EigenPairingError : public Error {
 public:
  explicit EigenPairingError(const std::string& what) : Error(what) {}
};

class GuardError : public Error {
 public:
  explicit GuardError(const std::string& what) : Error(what) {}
};

class TooFewAccepted : public Error {
 public:
  explicit TooFewAccepted(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line) : Error(what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class EmptyDataset : public Error {
 public:
  explicit EmptyDataset(const std::string& what) : Error(what) {}
};

}  // namespace rmt
