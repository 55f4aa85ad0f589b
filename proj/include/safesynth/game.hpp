#pragma once

// Symbolic safety game of a circuit specification and the concrete
// predecessor operators over it.

#include "safesynth/aiger.hpp"
#include "safesynth/bdd.hpp"
#include "safesynth/common.hpp"

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace safesynth::game
{

using bdd::Bdd;
using bdd::Var;

class MissingTransitionRelation : public std::logic_error
{
public:
    MissingTransitionRelation()
        : std::logic_error( "operation requires the monolithic transition relation" ) {}
};

/// Role-tagged variable groups. latch_now[k] and latch_next[k] form a pair.
struct VarBlocks
{
    std::vector< Var > uncontrollable;
    std::vector< Var > controllable;
    std::vector< Var > latch_now;
    std::vector< Var > latch_next;
};

struct GameLatch
{
    std::string name;
    /// AIGER variable of the latch; the synthesized error latch sorts last.
    std::uint32_t aiger_var = 0;
    /// Position of the latch in the circuit, empty for the synthesized error latch.
    std::optional< std::uint32_t > source;
    Var now = 0;
    Var next = 0;
    Bdd next_fn;
};

struct EncodeOptions
{
    bool monolithic = false;
    bdd::ManagerOptions manager;
};

class SymbolicGame
{
public:
    SymbolicGame( SymbolicGame&& ) noexcept = default;
    SymbolicGame& operator=( SymbolicGame&& ) = delete;
    ~SymbolicGame();

    bdd::Manager& manager() const { return *mgr_; }
    const aiger::CircuitSpec& spec() const { return spec_; }
    const VarBlocks& blocks() const { return blocks_; }
    std::span< const GameLatch > latches() const { return latches_; }
    std::size_t latch_count() const { return latches_.size(); }

    /// U(L): unsafe states.
    const Bdd& unsafe() const { return unsafe_; }
    /// q_I(L): all latches at 0.
    const Bdd& init() const { return init_; }
    /// f_bad(L, X_u, X_c) as read from the circuit output.
    const Bdd& bad_fn() const { return bad_fn_; }
    /// True when f_bad reads inputs and an error latch was added to the game.
    bool has_synthesized_error_latch() const { return synthesized_err_; }

    const Bdd& cube_uncontrollable() const { return cube_u_; }
    const Bdd& cube_controllable() const { return cube_c_; }
    const Bdd& cube_latches() const { return cube_now_; }
    const Bdd& cube_next() const { return cube_next_; }

    /// Variable of the circuit input at `position`.
    Var input_var( std::uint32_t position ) const { return input_vars_.at( position ); }
    /// Index into latches() of the game latch backed by circuit latch `position`.
    std::size_t latch_of_source( std::uint32_t position ) const;

    const std::optional< Bdd >& transition() const { return trans_; }
    /// T(L, X_u, X_c, L') = AND over latches of l' <-> f_l.
    const Bdd& build_transition();

    /// S(L)[l <- f_l]: the set of (state, inputs) whose successor is in S.
    Bdd substitute_next( const Bdd& states ) const;
    Bdd to_next( const Bdd& states ) const;
    Bdd to_now( const Bdd& states ) const;

    /// Fresh predicate variable pair (now, next) for abstraction slot `slot`.
    /// Slots are allocated lazily at the bottom of the order and reused.
    std::pair< Var, Var > predicate_vars( std::size_t slot );

    /// Assignment vector with latch values of `state` (bit k = latch k) and all
    /// other variables false; input values may be filled in by the caller.
    std::vector< bool > state_assignment( std::uint64_t state ) const;

    friend SymbolicGame encode( const aiger::CircuitSpec& spec, const EncodeOptions& opts );

private:
    SymbolicGame() = default;

    std::unique_ptr< bdd::Manager > mgr_;
    aiger::CircuitSpec spec_;
    VarBlocks blocks_;
    std::vector< Var > input_vars_;
    std::vector< GameLatch > latches_;
    Bdd unsafe_, init_, bad_fn_;
    bool synthesized_err_ = false;
    Bdd cube_u_, cube_c_, cube_now_, cube_next_;
    std::optional< Bdd > trans_;
    bdd::Substitution next_subst_, to_next_, to_now_;
    std::vector< std::pair< Var, Var > > predicate_pool_;
};

SymbolicGame encode( const aiger::CircuitSpec& spec, const EncodeOptions& opts = {} );

/// exists X_u. forall X_c. exists L'. T & S(L')
Bdd upre_mono( const SymbolicGame& g, const Bdd& states );
/// exists X_u. forall X_c. S[l <- f_l]
Bdd upre_subst( const SymbolicGame& g, const Bdd& states );
/// forall X_u. exists X_c. S[l <- f_l], the dual of upre.
Bdd cpre( const SymbolicGame& g, const Bdd& states );
/// Greatest fixpoint nu Y. S & cpre(Y).
Bdd cpre_fix( const SymbolicGame& g, const Bdd& states );

struct ClassicOptions
{
    /// Stop as soon as the initial state enters the iterate.
    bool stop_at_init = true;
};

/// Least fixpoint mu X. U | upre(X) and the realizability verdict.
/// Resource exhaustion is reported through the status.
SolveResult solve_classic( SymbolicGame& g, Algorithm variant, const ClassicOptions& opts = {} );

} // namespace safesynth::game
