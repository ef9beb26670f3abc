#ifndef CFSPHERE_ERRORS_HPP
#define CFSPHERE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cfs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CFS_ERROR_TYPE(Name)                         \
    struct Name : Error {                            \
        Name() : Error(#Name) {}                     \
        explicit Name(const std::string& m) : Error(std::string(#Name) + ": " + m) {} \
    }

CFS_ERROR_TYPE(ZeroVector);
CFS_ERROR_TYPE(DegenerateSpan);
CFS_ERROR_TYPE(DegenerateConic);
CFS_ERROR_TYPE(HasRealPoints);
CFS_ERROR_TYPE(NotSimultaneouslyDiagonalizable);
CFS_ERROR_TYPE(TangentLine);
CFS_ERROR_TYPE(ZeroBase);
CFS_ERROR_TYPE(BranchViolation);
CFS_ERROR_TYPE(ZeroNorm);
CFS_ERROR_TYPE(InsufficientSamples);
CFS_ERROR_TYPE(OutOfChart);
CFS_ERROR_TYPE(DifferentiationFailure);
CFS_ERROR_TYPE(DegenerateContact);
CFS_ERROR_TYPE(HessianSingular);
CFS_ERROR_TYPE(NotFlat);
CFS_ERROR_TYPE(NoConjugatePoint);
CFS_ERROR_TYPE(NonImmersed);
CFS_ERROR_TYPE(StepTooLarge);

#undef CFS_ERROR_TYPE

}  // namespace cfs

#endif
