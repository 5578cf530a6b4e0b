#pragma once

#include <stdexcept>
#include <string>

namespace ccsv {

// Base class for all structured errors raised by the library. The CLI maps
// any Error to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SizeLimitError : Error {
    explicit SizeLimitError(const std::string& what) : Error(what) {}
};
struct UnknownStateError : Error {
    explicit UnknownStateError(const std::string& what) : Error(what) {}
};
struct NotAnEquivalenceError : Error {
    explicit NotAnEquivalenceError(const std::string& what) : Error(what) {}
};
struct SemanticsMismatchError : Error {
    explicit SemanticsMismatchError(const std::string& what) : Error(what) {}
};
struct UndefinedNameError : Error {
    explicit UndefinedNameError(const std::string& what) : Error(what) {}
};
struct StateExplosionError : Error {
    explicit StateExplosionError(const std::string& what) : Error(what) {}
};
struct TypeCheckError : Error {
    explicit TypeCheckError(const std::string& what) : Error(what) {}
};
struct RangeOverflowError : Error {
    explicit RangeOverflowError(const std::string& what) : Error(what) {}
};
struct VariableClashError : Error {
    explicit VariableClashError(const std::string& what) : Error(what) {}
};
struct MalformedCtError : Error {
    explicit MalformedCtError(const std::string& what) : Error(what) {}
};
struct MalformedFlowchartError : Error {
    explicit MalformedFlowchartError(const std::string& what) : Error(what) {}
};
struct CapacityError : Error {
    explicit CapacityError(const std::string& what) : Error(what) {}
};
struct LengthMismatchError : Error {
    explicit LengthMismatchError(const std::string& what) : Error(what) {}
};
struct BadGeneratorError : Error {
    explicit BadGeneratorError(const std::string& what) : Error(what) {}
};
struct UnknownModelError : Error {
    explicit UnknownModelError(const std::string& what) : Error(what) {}
};
struct BadParamsError : Error {
    explicit BadParamsError(const std::string& what) : Error(what) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace ccsv
