#pragma once

#include <stdexcept>
#include <string>

namespace cubaug {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CUBAUG_ERROR(Name)                                                     \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

CUBAUG_ERROR(LoopPresent);
CUBAUG_ERROR(DegreeTooSmall);
CUBAUG_ERROR(InvalidArity);
CUBAUG_ERROR(InvalidRotation);
CUBAUG_ERROR(TooLarge);
CUBAUG_ERROR(NotSubgraph);
CUBAUG_ERROR(GapTooLarge);
CUBAUG_ERROR(InvalidSolution);
CUBAUG_ERROR(PreconditionViolated);
CUBAUG_ERROR(NotBiconnected);
CUBAUG_ERROR(RootHasNoParent);
CUBAUG_ERROR(NoEmbedding);
CUBAUG_ERROR(EmptySet);
CUBAUG_ERROR(InvalidNesting);
CUBAUG_ERROR(WrongShape);
CUBAUG_ERROR(FaceConditionViolated);
CUBAUG_ERROR(ParseError);
CUBAUG_ERROR(PlanarityError);

#undef CUBAUG_ERROR

}  // namespace cubaug
