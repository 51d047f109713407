#ifndef DSCOH_ERRORS_HPP
#define DSCOH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dscoh {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// treebank
struct UnbalancedBrackets : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct LeafWithChildren : Error { using Error::Error; };
struct NotALeaf : Error { using Error::Error; };
struct NotInTree : Error { using Error::Error; };

// lexsim
struct DimensionMismatch : Error { using Error::Error; };
struct EmptyTable : Error { using Error::Error; };
struct NonNumericComponent : Error { using Error::Error; };

// graph
struct DanglingSimPair : Error { using Error::Error; };
struct NoSimEdges : Error { using Error::Error; };

// cycles
struct NotConnected : Error { using Error::Error; };
struct CycleWithWrongSimEdgeCount : Error { using Error::Error; };
struct WrongSimEdgeCount : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct TooFewSimEdges : Error { using Error::Error; };

// dscoh
struct DuplicateDocumentId : Error { using Error::Error; };

// eval
struct LengthMismatch : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct KeyMismatch : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NegativeEntry : Error { using Error::Error; };
struct KTooLarge : Error { using Error::Error; };

}  // namespace dscoh

#endif
