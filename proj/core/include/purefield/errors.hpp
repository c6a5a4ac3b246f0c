#pragma once

#include <stdexcept>
#include <string>

namespace purefield {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// kinematics
class NoRetardedPoint : public Error { using Error::Error; };
class DegeneratePoint : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };

// regint
class InvalidInterval : public Error { using Error::Error; };
class SingularMismatch : public Error { using Error::Error; };

// hypersurface / quadrature
class DegenerateTangents : public Error { using Error::Error; };
class NonConvergent : public Error { using Error::Error; };

// action
class ConditionViolated : public Error { using Error::Error; };

}  // namespace purefield
