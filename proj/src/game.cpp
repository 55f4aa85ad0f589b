#include "safesynth/game.hpp"

#include <algorithm>

namespace safesynth::game
{

using aiger::Literal;

SymbolicGame::~SymbolicGame() = default;

SymbolicGame encode( const aiger::CircuitSpec& spec, const EncodeOptions& opts )
{
    SymbolicGame g;
    g.mgr_ = std::make_unique< bdd::Manager >( opts.manager );
    g.spec_ = spec;
    bdd::Manager& mgr = *g.mgr_;
    const aiger::AigFile& aig = spec.aig;

    // Order: X_u, X_c, then interleaved (l, l') pairs.
    g.input_vars_.assign( aig.inputs.size(), 0 );
    for ( std::uint32_t k : spec.uncontrollable )
    {
        g.input_vars_[ k ] = mgr.new_var();
        g.blocks_.uncontrollable.push_back( g.input_vars_[ k ] );
    }
    for ( std::uint32_t k : spec.controllable )
    {
        g.input_vars_[ k ] = mgr.new_var();
        g.blocks_.controllable.push_back( g.input_vars_[ k ] );
    }
    for ( std::uint32_t k : spec.latches )
    {
        GameLatch latch;
        latch.name = spec.latch_names[ k ];
        latch.aiger_var = aiger::lit_var( aig.latches[ k ].lit );
        latch.source = k;
        latch.now = mgr.new_var();
        latch.next = mgr.new_var();
        g.latches_.push_back( std::move( latch ) );
    }

    std::vector< Bdd > value( aig.max_var + 1 );
    value[ 0 ] = mgr.bdd_false();
    for ( std::uint32_t k = 0; k < aig.inputs.size(); ++k )
        value[ aiger::lit_var( aig.inputs[ k ] ) ] = mgr.var( g.input_vars_[ k ] );
    for ( std::size_t i = 0; i < g.latches_.size(); ++i )
        value[ g.latches_[ i ].aiger_var ] = mgr.var( g.latches_[ i ].now );

    auto lit_bdd = [ & ]( Literal lit ) {
        const Bdd& v = value[ aiger::lit_var( lit ) ];
        return aiger::lit_negated( lit ) ? !v : v;
    };

    std::vector< const aiger::AndGate* > gates;
    for ( const auto& gate : aig.ands )
        gates.push_back( &gate );
    std::sort( gates.begin(), gates.end(), []( auto* a, auto* b ) { return a->lhs < b->lhs; } );
    for ( const aiger::AndGate* gate : gates )
        value[ aiger::lit_var( gate->lhs ) ] = lit_bdd( gate->rhs0 ) & lit_bdd( gate->rhs1 );

    for ( auto& latch : g.latches_ )
        latch.next_fn = lit_bdd( aig.latches[ *latch.source ].next );
    g.bad_fn_ = lit_bdd( spec.bad );

    const auto bad_support = mgr.support( g.bad_fn_ );
    const bool reads_inputs = std::any_of( bad_support.begin(), bad_support.end(), [ & ]( Var v ) {
        return std::find( g.input_vars_.begin(), g.input_vars_.end(), v ) != g.input_vars_.end();
    } );
    if ( reads_inputs )
    {
        GameLatch err;
        err.name = "err";
        err.aiger_var = aig.max_var + 1;
        err.now = mgr.new_var();
        err.next = mgr.new_var();
        err.next_fn = mgr.var( err.now ) | g.bad_fn_;
        g.unsafe_ = mgr.var( err.now );
        g.latches_.push_back( std::move( err ) );
        g.synthesized_err_ = true;
    }
    else
    {
        g.unsafe_ = g.bad_fn_;
    }

    g.init_ = mgr.bdd_true();
    for ( const auto& latch : g.latches_ )
    {
        g.init_ &= mgr.nvar( latch.now );
        g.blocks_.latch_now.push_back( latch.now );
        g.blocks_.latch_next.push_back( latch.next );
        g.next_subst_.emplace_back( latch.now, latch.next_fn );
        g.to_next_.emplace_back( latch.now, mgr.var( latch.next ) );
        g.to_now_.emplace_back( latch.next, mgr.var( latch.now ) );
    }
    g.cube_u_ = mgr.cube( g.blocks_.uncontrollable );
    g.cube_c_ = mgr.cube( g.blocks_.controllable );
    g.cube_now_ = mgr.cube( g.blocks_.latch_now );
    g.cube_next_ = mgr.cube( g.blocks_.latch_next );

    if ( opts.monolithic )
        g.build_transition();
    return g;
}

std::size_t SymbolicGame::latch_of_source( std::uint32_t position ) const
{
    for ( std::size_t i = 0; i < latches_.size(); ++i )
        if ( latches_[ i ].source == position )
            return i;
    throw std::out_of_range( "no game latch for circuit latch " + std::to_string( position ) );
}

const Bdd& SymbolicGame::build_transition()
{
    if ( !trans_ )
    {
        Bdd t = mgr_->bdd_true();
        // Bottom-up so each conjunct lands below the partial product.
        for ( auto it = latches_.rbegin(); it != latches_.rend(); ++it )
            t &= mgr_->var( it->next ).iff( it->next_fn );
        trans_ = std::move( t );
    }
    return *trans_;
}

Bdd SymbolicGame::substitute_next( const Bdd& states ) const
{
    return mgr_->compose( states, next_subst_ );
}

Bdd SymbolicGame::to_next( const Bdd& states ) const { return mgr_->compose( states, to_next_ ); }
Bdd SymbolicGame::to_now( const Bdd& states ) const { return mgr_->compose( states, to_now_ ); }

std::pair< Var, Var > SymbolicGame::predicate_vars( std::size_t slot )
{
    while ( predicate_pool_.size() <= slot )
    {
        const Var now = mgr_->new_var();
        const Var next = mgr_->new_var();
        predicate_pool_.emplace_back( now, next );
    }
    return predicate_pool_[ slot ];
}

std::vector< bool > SymbolicGame::state_assignment( std::uint64_t state ) const
{
    std::vector< bool > a( mgr_->var_count(), false );
    for ( std::size_t k = 0; k < latches_.size(); ++k )
        a[ latches_[ k ].now ] = ( state >> k ) & 1;
    return a;
}

Bdd upre_mono( const SymbolicGame& g, const Bdd& states )
{
    if ( !g.transition() )
        throw MissingTransitionRelation();
    bdd::Manager& mgr = g.manager();
    const Bdd image = mgr.and_exists( *g.transition(), g.to_next( states ), g.cube_next() );
    return mgr.exists( mgr.forall( image, g.cube_controllable() ), g.cube_uncontrollable() );
}

Bdd upre_subst( const SymbolicGame& g, const Bdd& states )
{
    bdd::Manager& mgr = g.manager();
    const Bdd successor_in = g.substitute_next( states );
    return mgr.exists( mgr.forall( successor_in, g.cube_controllable() ), g.cube_uncontrollable() );
}

Bdd cpre( const SymbolicGame& g, const Bdd& states )
{
    return !upre_subst( g, !states );
}

Bdd cpre_fix( const SymbolicGame& g, const Bdd& states )
{
    Bdd current = states;
    while ( true )
    {
        Bdd next = states & cpre( g, current );
        if ( next == current )
            return current;
        current = std::move( next );
    }
}

SolveResult solve_classic( SymbolicGame& g, Algorithm variant, const ClassicOptions& opts )
{
    if ( variant != Algorithm::C && variant != Algorithm::CTL )
        throw std::invalid_argument( "solve_classic handles the C and C-TL variants only" );

    SolveResult result;
    try
    {
        if ( variant == Algorithm::C )
            g.build_transition();
        auto upre = [ & ]( const Bdd& s ) {
            return variant == Algorithm::C ? upre_mono( g, s ) : upre_subst( g, s );
        };

        Bdd current = g.manager().bdd_false();
        while ( true )
        {
            Bdd next = g.unsafe() | upre( current );
            ++result.iterations;
            const bool stable = next == current;
            if ( !stable && opts.stop_at_init && g.init().implies( next ) )
            {
                result.partial = true;
                current = std::move( next );
                break;
            }
            current = std::move( next );
            if ( stable )
                break;
        }
        result.status = g.init().implies( current ) ? Status::Unrealizable : Status::Realizable;
        result.losing = std::move( current );
    }
    catch ( const bdd::ResourceExhausted& e )
    {
        result.status = e.kind() == bdd::ResourceExhausted::Kind::Timeout ? Status::Timeout : Status::NodeLimit;
        result.detail = e.what();
    }
    return result;
}

} // namespace safesynth::game
