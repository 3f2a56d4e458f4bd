#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace delaybetter {

// Times are integers >= 1 for edge labels; demand deadlines may be 0.
using Time = std::int64_t;

// Sentinel for "no strict temporal path".
inline constexpr Time kUnreachable = std::numeric_limits<Time>::max();

// Dense vertex/edge indices. -1 means "none".
using VertexIx = int;
using EdgeIx = int;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntactically broken input (bad JSON, wrong value types).
class FormatError : public Error {
public:
    using Error::Error;
};

// Well-formed input violating a model invariant (self-loop, unknown vertex, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

enum class Fault {
    UnknownVertex,
    NotATree,
    MixedSources,
    BudgetExceeded,
    TooLarge,
    Undecided,
    WrongProblemKind,
    DirectedInput,
    UndirectedInput,
    ImproperColoring,
    InvalidInput,
    InfeasibleParameters,
};

inline const char* fault_name(Fault f) {
    switch (f) {
        case Fault::UnknownVertex: return "UNKNOWN_VERTEX";
        case Fault::NotATree: return "NOT_A_TREE";
        case Fault::MixedSources: return "MIXED_SOURCES";
        case Fault::BudgetExceeded: return "BUDGET_EXCEEDED";
        case Fault::TooLarge: return "TOO_LARGE";
        case Fault::Undecided: return "UNDECIDED";
        case Fault::WrongProblemKind: return "WRONG_PROBLEM_KIND";
        case Fault::DirectedInput: return "DIRECTED_INPUT";
        case Fault::UndirectedInput: return "UNDIRECTED_INPUT";
        case Fault::ImproperColoring: return "IMPROPER_COLORING";
        case Fault::InvalidInput: return "INVALID_INPUT";
        case Fault::InfeasibleParameters: return "INFEASIBLE_PARAMETERS";
    }
    return "UNKNOWN_FAULT";
}

// Recoverable solver/reduction failure with a machine-readable code.
class EngineError : public Error {
public:
    EngineError(Fault fault, const std::string& what)
        : Error(std::string(fault_name(fault)) + ": " + what), fault_(fault) {}

    Fault fault() const { return fault_; }

private:
    Fault fault_;
};

}  // namespace delaybetter
