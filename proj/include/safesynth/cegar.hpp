#pragma once

// Abstraction refinement for safety games: under/over abstract fixpoints
// restricted to an over-approximation of Adam's winning plays, pruning by
// Adam quasi-strategies, and localization-based refinement.

#include "safesynth/absgame.hpp"

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace safesynth::cegar
{

using absgame::AbstractGame;
using absgame::PredicateSet;
using bdd::Bdd;
using bdd::Var;
using game::SymbolicGame;

/// Raised when refinement is requested but every latch is already visible.
class NoLatchAvailable : public std::logic_error
{
public:
    NoLatchAvailable() : std::logic_error( "refine: every latch is already visible" ) {}
};

/// Where in a round a snapshot is taken.
enum class Stage { UnderFixpoint, OverFixpoint };

/// Read-only view of the loop state handed to the invariant hook.
struct RoundSnapshot
{
    Stage stage;
    std::size_t round;
    const AbstractGame& abstraction;
    const Bdd& unsafe_abs;
    const Bdd& reach_abs;
    const Bdd& w_under;
    /// Null at Stage::UnderFixpoint.
    const Bdd* w_over;
};

enum class Decision
{
    InitInUnder,       // not controllable: q_I^a in W_u
    InitOutsideOver,   // controllable: q_I^a not in W_o
    ConcreteFixpoint,  // controllable: guided upre adds nothing to gamma(W_u)
    Refined,
};

const char* to_string( Decision d );

struct RoundTrace
{
    std::size_t round = 0;
    std::size_t predicates = 0;
    std::size_t w_under_nodes = 0;
    std::size_t w_over_nodes = 0;
    std::size_t reach_iterations = 0;
    Decision decision = Decision::Refined;
    /// Game latch made visible by refinement (Decision::Refined only).
    std::size_t refined_latch = 0;
};

struct CegarOptions
{
    /// Called after each W_u and each W_o computation; tests use it to check
    /// the loop invariants against an explicit-state oracle.
    std::function< void( const RoundSnapshot& ) > on_round;
    /// Round-by-round trace sink; nothing is printed when null.
    std::ostream* log = nullptr;
};

struct CegarResult
{
    SolveResult result;
    std::vector< RoundTrace > trace;
    std::vector< std::size_t > visible_latches;
};

/// Runs abstraction refinement with variant A (monolithic abstract relation)
/// or A-TL (partitioned operators and the over-approximate post).
CegarResult abs_synth( SymbolicGame& g, Algorithm variant, const CegarOptions& opts = {} );

/// Makes one more latch visible and replaces p_U, p_R by the given sets.
PredicateSet refine( SymbolicGame& g, const PredicateSet& preds, const Bdd& unsafe_new, const Bdd& reach_new );

/// The latch refine would pick, without building the new predicate set.
std::size_t select_refinement_latch( SymbolicGame& g, const PredicateSet& preds, const Bdd& unsafe_new );

} // namespace safesynth::cegar
