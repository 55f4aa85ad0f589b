#pragma once

// Controller construction: winning region, Eve's quasi-strategy, incremental
// determinization with restrict, and lowering to and-inverter networks.

#include "safesynth/absgame.hpp"
#include "safesynth/aiger.hpp"
#include "safesynth/game.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace safesynth::strategy
{

using absgame::QuasiStrategy;
using bdd::Bdd;
using bdd::Var;
using game::SymbolicGame;

class InitNotWinning : public std::logic_error
{
public:
    InitNotWinning() : std::logic_error( "initial state is not in the computed winning region" ) {}
};

class EmptyChoice : public std::logic_error
{
public:
    EmptyChoice() : std::logic_error( "quasi-strategy offers no controllable move at some reachable state" ) {}
};

class InvariantViolation : public std::logic_error
{
public:
    explicit InvariantViolation( const std::string& which )
        : std::logic_error( "det_strat invariant violated: " + which ) {}
};

/// nu Y. (not losing) & (not U) & cpre(Y), for a set `losing` contained in
/// upre*(U). Throws InitNotWinning if the initial state is not in the result.
Bdd winning_region( const SymbolicGame& g, const Bdd& losing );

/// lambda(L, X_u, X_c) = not S | S[l <- f_l]: moves staying in S from S, anything elsewhere.
QuasiStrategy eve_quasi_strategy( const SymbolicGame& g, const Bdd& region );

struct ControlFunction
{
    /// Position of the controllable input in the circuit.
    std::uint32_t input = 0;
    Var var = 0;
    /// g_x(L, X_u).
    Bdd function;
    aiger::GateNetwork network;
};

struct Controller
{
    std::vector< ControlFunction > functions;

    std::size_t gate_count() const;
    std::vector< aiger::ControllerOutput > outputs() const;
};

struct DetOptions
{
    /// Restrict the negation of f_{not x} instead of f_x.
    bool restrict_negated = false;
    /// Validity checks of the three loop invariants after every iteration.
    bool check_invariants = true;
};

/// Fixes each controllable input in declaration order.
Controller det_strat( const SymbolicGame& g, const QuasiStrategy& lambda, const Bdd& reach,
                      const DetOptions& opts = {} );

/// States reachable from the initial state when the controller drives X_c.
Bdd reachable_under( const SymbolicGame& g, const Controller& ctrl );

/// Runs det_strat again with R = reachable_under(first pass).
Controller rerun_with_reachable( const SymbolicGame& g, const Controller& first, const DetOptions& opts = {} );

/// Shannon lowering with structural hashing; reads latches and uncontrollable
/// inputs of the circuit only. At most three gates per BDD node.
aiger::GateNetwork bdd_to_gates( const SymbolicGame& g, const Bdd& f );

struct CounterexampleTrace
{
    std::vector< std::string > latch_names;
    std::vector< std::string > input_names;
    /// states[k] is the latch valuation before step k; one more state than inputs.
    std::vector< std::vector< bool > > states;
    std::vector< std::vector< bool > > inputs;

    std::size_t length() const { return inputs.size(); }
};

struct VerifyOptions
{
    bdd::ManagerOptions manager;
    std::optional< std::chrono::steady_clock::time_point > deadline;
};

struct VerifyResult
{
    bool safe = false;
    std::optional< CounterexampleTrace > counterexample;
    std::size_t depth = 0;
};

/// Splices the controller into the circuit and checks by forward BDD
/// reachability on the result that the bad output can never fire.
VerifyResult verify_controller( const aiger::CircuitSpec& spec, const std::vector< aiger::ControllerOutput >& ctrl,
                                const VerifyOptions& opts = {} );

struct SynthesisOptions
{
    DetOptions det;
    bool rerun_reach = false;
};

struct SynthesisResult
{
    Bdd region;
    Controller controller;
    /// Set when the second pass was requested.
    std::optional< Controller > rerun;

    const Controller& final_controller() const { return rerun ? *rerun : controller; }
};

SynthesisResult synthesize( const SymbolicGame& g, const Bdd& losing, const SynthesisOptions& opts = {} );

} // namespace safesynth::strategy
