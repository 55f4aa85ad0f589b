#pragma once

#include "safesynth/bdd.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace safesynth
{

enum class Status { Realizable, Unrealizable, Timeout, NodeLimit };

/// The four solver variants: concrete fixpoint with a monolithic transition
/// relation (C) or with substitution (C-TL), and abstraction refinement with
/// a monolithic abstract relation (A) or with partitioned operators (A-TL).
enum class Algorithm { C, CTL, A, ATL };

const char* to_string( Status status );
const char* to_string( Algorithm algo );
std::optional< Algorithm > parse_algorithm( std::string_view text );

struct SolveResult
{
    Status status = Status::Timeout;
    /// A set of states over the latch variables contained in the losing region
    /// upre*(U). The classic solvers return the fixpoint itself; abstraction
    /// refinement returns the concretization of its under-approximation.
    bdd::Bdd losing;
    std::size_t iterations = 0;
    std::size_t rounds = 0;
    /// True when iteration stopped early because the initial state was reached.
    bool partial = false;
    std::string detail;

    bool decided() const { return status == Status::Realizable || status == Status::Unrealizable; }
};

} // namespace safesynth
