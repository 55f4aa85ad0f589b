#include "safesynth/absgame.hpp"

#include <algorithm>
#include <stdexcept>

namespace safesynth::absgame
{

PredicateSet::PredicateSet( SymbolicGame& g, const Bdd& unsafe_def, const Bdd& reach_def,
                            const std::vector< std::size_t >& visible_latches,
                            const std::vector< Bdd >& custom )
    : visible_( visible_latches )
{
    bdd::Manager& mgr = g.manager();
    auto add = [ & ]( PredicateRole role, std::optional< std::size_t > latch, Bdd def ) {
        const auto [ now, next ] = g.predicate_vars( preds_.size() );
        preds_.push_back( Predicate{ role, latch, std::move( def ), now, next } );
    };
    add( PredicateRole::Init, std::nullopt, g.init() );
    add( PredicateRole::Unsafe, std::nullopt, unsafe_def );
    add( PredicateRole::Reach, std::nullopt, reach_def );
    for ( std::size_t latch : visible_latches )
    {
        if ( latch >= g.latch_count() )
            throw std::out_of_range( "visible latch index out of range" );
        add( PredicateRole::Latch, latch, mgr.var( g.latches()[ latch ].now ) );
    }
    for ( const Bdd& def : custom )
        add( PredicateRole::Custom, std::nullopt, def );
}

bool PredicateSet::is_visible( std::size_t latch ) const
{
    return std::find( visible_.begin(), visible_.end(), latch ) != visible_.end();
}

AbstractGame::AbstractGame( SymbolicGame& g, PredicateSet preds ) : game_( &g ), preds_( std::move( preds ) )
{
    bdd::Manager& mgr = g.manager();
    std::vector< Var > now_vars, next_vars;
    relation_ = mgr.bdd_true();
    for ( auto it = preds_.predicates().rbegin(); it != preds_.predicates().rend(); ++it )
        relation_ &= mgr.var( it->now ).iff( it->definition );
    for ( const Predicate& p : preds_.predicates() )
    {
        now_vars.push_back( p.now );
        next_vars.push_back( p.next );
        gamma_subst_.emplace_back( p.now, p.definition );
        to_next_.emplace_back( p.now, mgr.var( p.next ) );
        to_now_.emplace_back( p.next, mgr.var( p.now ) );
        psi_.push_back( g.substitute_next( p.definition ) );
        psi_subst_.emplace_back( p.now, psi_.back() );
    }
    cube_p_ = mgr.cube( now_vars );
    cube_p_next_ = mgr.cube( next_vars );
    init_abs_ = alpha_over( g.init() );
}

Bdd AbstractGame::gamma( const Bdd& abstract_states ) const
{
    return manager().compose( abstract_states, gamma_subst_ );
}

Bdd AbstractGame::alpha_over( const Bdd& states ) const
{
    return manager().and_exists( states, relation_, game_->cube_latches() );
}

Bdd AbstractGame::alpha_under( const Bdd& states ) const
{
    return !alpha_over( !states );
}

const Bdd& AbstractGame::build_transition()
{
    if ( !trans_abs_ )
    {
        if ( !game_->transition() )
            throw game::MissingTransitionRelation();
        bdd::Manager& mgr = manager();
        // H'(L', P') = AND p' <-> f_p(L')
        Bdd next_relation = mgr.bdd_true();
        for ( auto it = preds_.predicates().rbegin(); it != preds_.predicates().rend(); ++it )
            next_relation &= mgr.var( it->next ).iff( game_->to_next( it->definition ) );
        const Bdd over_next = mgr.and_exists( *game_->transition(), next_relation, game_->cube_next() );
        trans_abs_ = mgr.and_exists( over_next, relation_, game_->cube_latches() );
    }
    return *trans_abs_;
}

const Bdd& AbstractGame::transition() const
{
    if ( !trans_abs_ )
        throw game::MissingTransitionRelation();
    return *trans_abs_;
}

Bdd AbstractGame::substitute_psi( const Bdd& abstract_states ) const
{
    return manager().compose( abstract_states, psi_subst_ );
}

Bdd AbstractGame::to_next( const Bdd& abstract_states ) const
{
    return manager().compose( abstract_states, to_next_ );
}

Bdd AbstractGame::to_now( const Bdd& abstract_states ) const
{
    return manager().compose( abstract_states, to_now_ );
}

QuasiStrategy AbstractGame::concretize( const QuasiStrategy& abstract ) const
{
    if ( abstract.domain != QuasiStrategy::Domain::AdamAbstract )
        throw std::invalid_argument( "concretize expects an abstract Adam quasi-strategy" );
    return { gamma( abstract.relation ), QuasiStrategy::Domain::AdamConcrete };
}

Bdd upre_over( const AbstractGame& a, const Bdd& abstract_states )
{
    bdd::Manager& mgr = a.manager();
    const SymbolicGame& g = a.concrete();
    const Bdd some_succ_in = mgr.and_exists( a.transition(), a.to_next( abstract_states ), a.cube_pred_next() );
    return mgr.exists( mgr.forall( some_succ_in, g.cube_controllable() ), g.cube_uncontrollable() );
}

Bdd upre_under( const AbstractGame& a, const Bdd& abstract_states )
{
    bdd::Manager& mgr = a.manager();
    const SymbolicGame& g = a.concrete();
    const Bdd implication = mgr.apply( bdd::BinaryOp::Implies, a.transition(), a.to_next( abstract_states ) );
    const Bdd all_succ_in = mgr.forall( implication, a.cube_pred_next() );
    return mgr.exists( mgr.forall( all_succ_in, g.cube_controllable() ), g.cube_uncontrollable() );
}

Bdd upre_over_part( const AbstractGame& a, const Bdd& abstract_states )
{
    bdd::Manager& mgr = a.manager();
    const SymbolicGame& g = a.concrete();
    const Bdd lifted = a.alpha_over( a.substitute_psi( abstract_states ) );
    return mgr.exists( mgr.forall( lifted, g.cube_controllable() ), g.cube_uncontrollable() );
}

Bdd upre_under_part( const AbstractGame& a, const Bdd& abstract_states )
{
    bdd::Manager& mgr = a.manager();
    const SymbolicGame& g = a.concrete();
    const Bdd lifted = a.alpha_over( a.substitute_psi( !abstract_states ) );
    return !mgr.forall( mgr.exists( lifted, g.cube_controllable() ), g.cube_uncontrollable() );
}

QuasiStrategy adam_quasi_strategy( const AbstractGame& a, const Bdd& target )
{
    bdd::Manager& mgr = a.manager();
    const SymbolicGame& g = a.concrete();
    Bdd some_succ_in = a.has_transition()
                           ? mgr.and_exists( a.transition(), a.to_next( target ), a.cube_pred_next() )
                           : a.alpha_over( a.substitute_psi( target ) );
    return { mgr.forall( some_succ_in, g.cube_controllable() ), QuasiStrategy::Domain::AdamAbstract };
}

Bdd upre_concrete_guided( const SymbolicGame& g, const QuasiStrategy& quasi, const Bdd& states,
                          const Bdd& reach )
{
    if ( quasi.domain != QuasiStrategy::Domain::AdamConcrete )
        throw std::invalid_argument( "upre_concrete_guided expects a concrete Adam quasi-strategy" );
    bdd::Manager& mgr = g.manager();
    const Bdd forced = mgr.forall( g.substitute_next( states ), g.cube_controllable() );
    return mgr.and_exists( quasi.relation, forced, g.cube_uncontrollable() ) & reach;
}

Bdd post_abs( const AbstractGame& a, const Bdd& abstract_states, const QuasiStrategy& quasi )
{
    if ( quasi.domain != QuasiStrategy::Domain::AdamAbstract )
        throw std::invalid_argument( "post_abs expects an abstract Adam quasi-strategy" );
    bdd::Manager& mgr = a.manager();
    const SymbolicGame& g = a.concrete();
    const Bdd cube = a.cube_pred() & g.cube_uncontrollable() & g.cube_controllable();
    const Bdd succ = mgr.and_exists( a.transition(), abstract_states & quasi.relation, cube );
    return a.to_now( succ );
}

Bdd post_over_part( const AbstractGame& a, const Bdd& abstract_states, const QuasiStrategy& quasi )
{
    if ( quasi.domain != QuasiStrategy::Domain::AdamAbstract )
        throw std::invalid_argument( "post_over_part expects an abstract Adam quasi-strategy" );
    bdd::Manager& mgr = a.manager();
    const SymbolicGame& g = a.concrete();
    const Bdd source = a.gamma( abstract_states & quasi.relation );
    Bdd updates = mgr.bdd_true();
    const auto& preds = a.predicates().predicates();
    for ( std::size_t i = preds.size(); i-- > 0; )
    {
        const Bdd update = mgr.var( preds[ i ].next ).iff( a.psi( i ) );
        updates &= mgr.exists( update, g.cube_controllable() );
    }
    const Bdd succ = mgr.and_exists( source, updates, g.cube_latches() & g.cube_uncontrollable() );
    return a.to_now( succ );
}

} // namespace safesynth::absgame
