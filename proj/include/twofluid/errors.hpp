#ifndef TWOFLUID_ERRORS_HPP
#define TWOFLUID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twofluid {

// Input outside the physical domain (rho <= 0, p + p_inf <= 0, alpha outside (0,1), ...).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A computed state left the admissible set; the message carries the offending values
// (and the cell index when raised inside the solver).
class InvalidStateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when the interface eigenvalue u is too close to an acoustic eigenvalue
// u_k +- c_k and the eigenbasis/symmetrizer cannot be assembled.
class ResonanceError : public std::runtime_error {
public:
  ResonanceError(int phase, int sign, double margin, bool hyperbolic_exception,
                 const std::string& what_arg)
      : std::runtime_error(what_arg),
        phase_(phase), sign_(sign), margin_(margin),
        hyperbolic_exception_(hyperbolic_exception) {}

  int phase() const { return phase_; }      // offending phase, 1 or 2
  int sign() const { return sign_; }        // +1 for u_k + c_k, -1 for u_k - c_k
  double margin() const { return margin_; }
  // True when p_I == p_k - rho_k c_k^2 at the resonant state, in which case the
  // system stays hyperbolic; reported as information only.
  bool hyperbolic_exception() const { return hyperbolic_exception_; }

private:
  int phase_;
  int sign_;
  double margin_;
  bool hyperbolic_exception_;
};

// Iterative procedure failed to converge (Newton, quadrature, ...).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation was violated by the caller.
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Scenario/config file rejected; message carries section, key and line number.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace twofluid

#endif
