#pragma once

// Conservative abstractions of a symbolic safety game by predicates over the
// latches, with localization reduction as the special case where predicates
// are single latches.

#include "safesynth/game.hpp"

#include <optional>
#include <vector>

namespace safesynth::absgame
{

using bdd::Bdd;
using bdd::Var;
using game::SymbolicGame;

enum class PredicateRole { Init, Unsafe, Reach, Latch, Custom };

struct Predicate
{
    PredicateRole role;
    /// Game latch index for localization predicates.
    std::optional< std::size_t > latch;
    /// f_p(L).
    Bdd definition;
    Var now = 0;
    Var next = 0;
};

class PredicateSet
{
public:
    /// {p_I, p_U, p_R} plus one predicate per visible latch (in the given
    /// order) and any custom predicates. p_I is defined by the initial state.
    PredicateSet( SymbolicGame& g, const Bdd& unsafe_def, const Bdd& reach_def,
                  const std::vector< std::size_t >& visible_latches,
                  const std::vector< Bdd >& custom = {} );

    const std::vector< Predicate >& predicates() const { return preds_; }
    std::size_t size() const { return preds_.size(); }
    const std::vector< std::size_t >& visible_latches() const { return visible_; }
    bool is_visible( std::size_t latch ) const;

    const Predicate& init_pred() const { return preds_[ 0 ]; }
    const Predicate& unsafe_pred() const { return preds_[ 1 ]; }
    const Predicate& reach_pred() const { return preds_[ 2 ]; }

private:
    std::vector< Predicate > preds_;
    std::vector< std::size_t > visible_;
};

/// A non-deterministic strategy as a relation. Adam's abstract form ranges
/// over (P, X_u), his concrete form over (L, X_u); Eve's over (L, X_u, X_c).
struct QuasiStrategy
{
    enum class Domain { AdamAbstract, AdamConcrete, Eve };
    Bdd relation;
    Domain domain;
};

class AbstractGame
{
public:
    AbstractGame( SymbolicGame& g, PredicateSet preds );

    SymbolicGame& concrete() const { return *game_; }
    bdd::Manager& manager() const { return game_->manager(); }
    const PredicateSet& predicates() const { return preds_; }

    const Bdd& cube_pred() const { return cube_p_; }
    const Bdd& cube_pred_next() const { return cube_p_next_; }
    /// H(L, P) = AND over p of p <-> f_p(L).
    const Bdd& abstraction_relation() const { return relation_; }
    /// q_I^a, the abstract state of the concrete initial state.
    const Bdd& init_abs() const { return init_abs_; }

    /// gamma(S^a)(L) = S^a(P)[p <- f_p(L)]
    Bdd gamma( const Bdd& abstract_states ) const;
    /// exists L. S(L) & H(L, P); other free variables of S are kept.
    Bdd alpha_over( const Bdd& states ) const;
    /// Q^a minus alpha_over(Q minus S)
    Bdd alpha_under( const Bdd& states ) const;

    bool has_transition() const { return trans_abs_.has_value(); }
    /// T^a(P, X_u, X_c, P'); requires the concrete monolithic relation.
    const Bdd& build_transition();
    const Bdd& transition() const;

    /// psi_p(L, X_u, X_c) = f_p[l <- f_l].
    const Bdd& psi( std::size_t pred ) const { return psi_[ pred ]; }
    /// S^a(P)[p <- psi_p]: (state, inputs) whose abstract successor lies in S^a.
    Bdd substitute_psi( const Bdd& abstract_states ) const;

    Bdd to_next( const Bdd& abstract_states ) const;
    Bdd to_now( const Bdd& abstract_states ) const;

    /// Concrete form of an abstract Adam quasi-strategy: gamma applied to the relation.
    QuasiStrategy concretize( const QuasiStrategy& abstract ) const;

private:
    SymbolicGame* game_;
    PredicateSet preds_;
    Bdd cube_p_, cube_p_next_, relation_, init_abs_;
    bdd::Substitution gamma_subst_, psi_subst_, to_next_, to_now_;
    std::vector< Bdd > psi_;
    std::optional< Bdd > trans_abs_;
};

/// Monolithic abstract predecessors (need T^a).
Bdd upre_over( const AbstractGame& a, const Bdd& abstract_states );
Bdd upre_under( const AbstractGame& a, const Bdd& abstract_states );

/// Partitioned forms computed through psi_p, without T^a.
Bdd upre_over_part( const AbstractGame& a, const Bdd& abstract_states );
Bdd upre_under_part( const AbstractGame& a, const Bdd& abstract_states );

/// Lambda_W(P, X_u) = forall X_c. exists P'. T^a & W(P'); uses psi_p when T^a
/// has not been built.
QuasiStrategy adam_quasi_strategy( const AbstractGame& a, const Bdd& target );

/// Concrete upre restricted to moves allowed by a concrete Adam quasi-strategy,
/// intersected with `reach`.
Bdd upre_concrete_guided( const SymbolicGame& g, const QuasiStrategy& quasi, const Bdd& states,
                          const Bdd& reach );

/// Abstract successors of S^a under an abstract Adam quasi-strategy (needs T^a).
Bdd post_abs( const AbstractGame& a, const Bdd& abstract_states, const QuasiStrategy& quasi );
/// Over-approximation of post_abs with the controllable quantifier pushed
/// inside each predicate's update.
Bdd post_over_part( const AbstractGame& a, const Bdd& abstract_states, const QuasiStrategy& quasi );

} // namespace safesynth::absgame
