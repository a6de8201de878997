#pragma once

#include <stdexcept>
#include <string>

namespace vf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroDenominator : public Error { public: using Error::Error; };
class DegenerateNodes : public Error { public: using Error::Error; };
class ArityError : public Error { public: using Error::Error; };
class InvalidModulus : public Error { public: using Error::Error; };
class IndependenceViolation : public Error { public: using Error::Error; };
class ZeroPivot : public Error { public: using Error::Error; };
class NondegeneracyExhausted : public Error { public: using Error::Error; };
class UnsupportedDimension : public Error { public: using Error::Error; };
class FamilyGap : public Error { public: using Error::Error; };
class BudgetExceeded : public Error { public: using Error::Error; };
class EmptyModel : public Error { public: using Error::Error; };
class CorrespondenceViolation : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };

} // namespace vf
