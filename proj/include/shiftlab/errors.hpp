#pragma once

/** \file errors.hpp
 *  \brief Exception hierarchy. InputError maps to exit code 2, NumericalError to 3.
 */

#include <stdexcept>
#include <string>

namespace shiftlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration, malformed input or violated precondition.
class InputError : public Error {
public:
    using Error::Error;
};

/// Breakdown of a numerical step on otherwise valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

#define SHIFTLAB_DEFINE_ERROR(Name, Base)       \
    class Name : public Base {                  \
    public:                                     \
        explicit Name(const std::string& what)  \
            : Base(std::string(#Name ": ") + what) {} \
    };

SHIFTLAB_DEFINE_ERROR(ConfigError, InputError)
SHIFTLAB_DEFINE_ERROR(ClassViolation, InputError)
SHIFTLAB_DEFINE_ERROR(DimensionMismatch, InputError)
SHIFTLAB_DEFINE_ERROR(InvalidP, InputError)
SHIFTLAB_DEFINE_ERROR(PointOffCircle, InputError)
SHIFTLAB_DEFINE_ERROR(PartitionOverflow, InputError)
SHIFTLAB_DEFINE_ERROR(ComplexityGuard, InputError)
SHIFTLAB_DEFINE_ERROR(DepthTooSmall, InputError)
SHIFTLAB_DEFINE_ERROR(SupportExceedsProbes, InputError)
SHIFTLAB_DEFINE_ERROR(FormatError, InputError)

SHIFTLAB_DEFINE_ERROR(NotNormal, NumericalError)
SHIFTLAB_DEFINE_ERROR(ClusterAmbiguity, NumericalError)
SHIFTLAB_DEFINE_ERROR(NegativeEigenvalue, NumericalError)
SHIFTLAB_DEFINE_ERROR(SingularResolvent, NumericalError)
SHIFTLAB_DEFINE_ERROR(OnePointSpectrum, NumericalError)
SHIFTLAB_DEFINE_ERROR(SingularFactor, NumericalError)
SHIFTLAB_DEFINE_ERROR(SpectrumTooClustered, NumericalError)
SHIFTLAB_DEFINE_ERROR(QuadratureDivergence, NumericalError)
SHIFTLAB_DEFINE_ERROR(SeparationUnreachable, NumericalError)
SHIFTLAB_DEFINE_ERROR(ZeroDenominator, NumericalError)

#undef SHIFTLAB_DEFINE_ERROR

}  // namespace shiftlab
