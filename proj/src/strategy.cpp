#include "safesynth/strategy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace safesynth::strategy
{

using aiger::GateNetwork;
using aiger::Literal;
using aiger::Signal;

Bdd winning_region( const SymbolicGame& g, const Bdd& losing )
{
    // U is removed explicitly: `losing` need only cover the unsafe states that
    // Adam's winning plays can visit.
    const Bdd region = game::cpre_fix( g, ( !losing ) & ( !g.unsafe() ) );
    if ( !g.init().implies( region ) )
        throw InitNotWinning();
    return region;
}

QuasiStrategy eve_quasi_strategy( const SymbolicGame& g, const Bdd& region )
{
    return { ( !region ) | g.substitute_next( region ), QuasiStrategy::Domain::Eve };
}

std::size_t Controller::gate_count() const
{
    std::size_t n = 0;
    for ( const auto& f : functions )
        n += f.network.gate_count();
    return n;
}

std::vector< aiger::ControllerOutput > Controller::outputs() const
{
    std::vector< aiger::ControllerOutput > out;
    for ( const auto& f : functions )
        out.push_back( { f.input, f.network } );
    return out;
}

GateNetwork bdd_to_gates( const SymbolicGame& g, const Bdd& f )
{
    bdd::Manager& mgr = g.manager();
    GateNetwork net;
    if ( f.is_constant() )
    {
        net.output = f.is_true() ? aiger::lit_true : aiger::lit_false;
        return net;
    }

    std::unordered_map< Var, Signal > signal_of;
    for ( std::uint32_t k : g.spec().uncontrollable )
        signal_of.emplace( g.input_var( k ), Signal{ Signal::Kind::Input, k } );
    for ( const auto& latch : g.latches() )
        if ( latch.source )
            signal_of.emplace( latch.now, Signal{ Signal::Kind::Latch, *latch.source } );

    std::unordered_map< Var, Literal > leaf_lit;
    for ( Var v : mgr.support( f ) )
    {
        auto it = signal_of.find( v );
        if ( it == signal_of.end() )
            throw std::invalid_argument( "bdd_to_gates: function reads a variable that is not a circuit signal" );
        net.leaves.push_back( it->second );
        leaf_lit.emplace( v, aiger::make_lit( static_cast< std::uint32_t >( net.leaves.size() ) ) );
    }

    std::map< std::pair< Literal, Literal >, Literal > strash;
    auto mk_and = [ & ]( Literal a, Literal b ) -> Literal {
        if ( a > b )
            std::swap( a, b );
        if ( a == aiger::lit_false || a == aiger::lit_not( b ) )
            return aiger::lit_false;
        if ( a == aiger::lit_true || a == b )
            return b;
        auto [ it, fresh ] = strash.try_emplace( { a, b }, 0 );
        if ( fresh )
        {
            net.gates.emplace_back( a, b );
            it->second = aiger::make_lit( static_cast< std::uint32_t >( net.leaves.size() + net.gates.size() ) );
        }
        return it->second;
    };
    auto mk_or = [ & ]( Literal a, Literal b ) {
        return aiger::lit_not( mk_and( aiger::lit_not( a ), aiger::lit_not( b ) ) );
    };

    std::unordered_map< bdd::NodeId, Literal > memo{ { 0, aiger::lit_false }, { 1, aiger::lit_true } };
    std::function< Literal( bdd::NodeId ) > lower = [ & ]( bdd::NodeId id ) -> Literal {
        if ( auto it = memo.find( id ); it != memo.end() )
            return it->second;
        const Literal x = leaf_lit.at( mgr.node_var( id ) );
        const Literal hi = lower( mgr.node_high( id ) );
        const Literal lo = lower( mgr.node_low( id ) );
        const Literal out = mk_or( mk_and( x, hi ), mk_and( aiger::lit_not( x ), lo ) );
        memo.emplace( id, out );
        return out;
    };
    net.output = lower( f.id() );
    return net;
}

Controller det_strat( const SymbolicGame& g, const QuasiStrategy& lambda, const Bdd& reach, const DetOptions& opts )
{
    if ( lambda.domain != QuasiStrategy::Domain::Eve )
        throw std::invalid_argument( "det_strat expects an Eve quasi-strategy" );
    bdd::Manager& mgr = g.manager();
    const std::vector< Var >& xc = g.blocks().controllable;
    std::optional< Var > err;
    if ( g.has_synthesized_error_latch() )
        err = g.latches().back().now;

    auto others_cube = [ & ]( Var x ) {
        std::vector< Var > rest;
        for ( Var v : xc )
            if ( v != x )
                rest.push_back( v );
        return mgr.cube( rest );
    };

    Controller ctrl;
    const Bdd& lambda0 = lambda.relation;
    Bdd lam = lambda0;
    std::vector< Var > done;
    for ( std::size_t i = 0; i < xc.size(); ++i )
    {
        const Var x = xc[ i ];
        const Bdd f = mgr.exists( lam, others_cube( x ) );
        const Bdd f_x = mgr.cofactor( f, x, true );
        const Bdd f_nx = mgr.cofactor( f, x, false );
        if ( !( reach & !f_x & !f_nx ).is_false() )
            throw EmptyChoice();
        const Bdd care = reach & ( ( !f_x ) | ( !f_nx ) );
        Bdd g_x = mgr.restrict( opts.restrict_negated ? !f_nx : f_x, care );
        // the synthesized error latch has no circuit counterpart; it is 0 on reach
        if ( err )
            g_x = mgr.cofactor( g_x, *err, false );
        lam &= mgr.var( x ).iff( g_x );
        done.push_back( x );

        if ( opts.check_invariants )
        {
            if ( !( reach & lam ).implies( lambda0 ) )
                throw InvariantViolation( "R & lambda => lambda_0" );
            if ( !mgr.exists( lam, g.cube_controllable() ).is_true() )
                throw InvariantViolation( "forall L, X_u exists X_c. lambda" );
            for ( Var xj : done )
            {
                const Bdd fj = mgr.exists( lam, others_cube( xj ) );
                if ( !( mgr.cofactor( fj, xj, true ) & mgr.cofactor( fj, xj, false ) ).is_false() )
                    throw InvariantViolation( "lambda functional in processed inputs" );
            }
        }

        ControlFunction cf;
        cf.input = g.spec().controllable[ i ];
        cf.var = x;
        cf.function = g_x;
        cf.network = bdd_to_gates( g, g_x );
        ctrl.functions.push_back( std::move( cf ) );
    }
    return ctrl;
}

Bdd reachable_under( const SymbolicGame& g, const Controller& ctrl )
{
    bdd::Manager& mgr = g.manager();
    bdd::Substitution sub;
    for ( const auto& f : ctrl.functions )
        sub.emplace_back( f.var, f.function );
    Bdd rel = mgr.bdd_true();
    const auto latches = g.latches();
    for ( auto it = latches.rbegin(); it != latches.rend(); ++it )
        rel &= mgr.var( it->next ).iff( mgr.compose( it->next_fn, sub ) );
    const Bdd cube = g.cube_latches() & g.cube_uncontrollable() & g.cube_controllable();

    Bdd reach = g.init();
    while ( true )
    {
        const Bdd next = reach | g.to_now( mgr.and_exists( reach, rel, cube ) );
        if ( next == reach )
            return reach;
        reach = next;
    }
}

Controller rerun_with_reachable( const SymbolicGame& g, const Controller& first, const DetOptions& opts )
{
    const Bdd reach = reachable_under( g, first );
    return det_strat( g, eve_quasi_strategy( g, reach ), reach, opts );
}

namespace
{

Bdd state_cube( bdd::Manager& mgr, const SymbolicGame& g, const std::vector< bool >& assignment )
{
    Bdd cube = mgr.bdd_true();
    for ( const auto& latch : g.latches() )
        cube &= assignment[ latch.now ] ? mgr.var( latch.now ) : mgr.nvar( latch.now );
    return cube;
}

} // namespace

VerifyResult verify_controller( const aiger::CircuitSpec& spec, const std::vector< aiger::ControllerOutput >& ctrl,
                                const VerifyOptions& opts )
{
    const aiger::CircuitSpec closed = aiger::split_inputs( aiger::splice_controller( spec.aig, ctrl ) );
    game::EncodeOptions eo;
    eo.monolithic = true;
    eo.manager = opts.manager;
    game::SymbolicGame vg = game::encode( closed, eo );
    bdd::Manager& mgr = vg.manager();
    if ( opts.deadline )
        mgr.set_deadline( *opts.deadline );

    const Bdd& trans = *vg.transition();
    const Bdd cube = vg.cube_latches() & vg.cube_uncontrollable() & vg.cube_controllable();
    std::vector< Bdd > layers{ vg.init() };
    Bdd reach = vg.init();
    VerifyResult result;
    while ( true )
    {
        const Bdd hit = layers.back() & vg.unsafe();
        if ( !hit.is_false() )
            break;
        const Bdd frontier = vg.to_now( mgr.and_exists( trans, layers.back(), cube ) ) & !reach;
        if ( frontier.is_false() )
        {
            result.safe = true;
            result.depth = layers.size() - 1;
            return result;
        }
        reach |= frontier;
        layers.push_back( frontier );
    }

    // Walk back through the layers from an unsafe state.
    CounterexampleTrace trace;
    for ( const auto& latch : vg.latches() )
        trace.latch_names.push_back( latch.name );
    for ( std::uint32_t k : closed.uncontrollable )
        trace.input_names.push_back( closed.input_names[ k ] );
    auto latch_values = [ & ]( const std::vector< bool >& a ) {
        std::vector< bool > v;
        for ( const auto& latch : vg.latches() )
            v.push_back( a[ latch.now ] );
        return v;
    };

    std::vector< bool > target = *mgr.pick_one( layers.back() & vg.unsafe() );
    trace.states.push_back( latch_values( target ) );
    for ( std::size_t i = layers.size() - 1; i-- > 0; )
    {
        const Bdd step = layers[ i ] & trans & vg.to_next( state_cube( mgr, vg, target ) );
        const std::vector< bool > a = *mgr.pick_one( step );
        std::vector< bool > in;
        for ( std::uint32_t k : closed.uncontrollable )
            in.push_back( a[ vg.input_var( k ) ] );
        trace.inputs.push_back( std::move( in ) );
        trace.states.push_back( latch_values( a ) );
        target = a;
    }
    std::reverse( trace.states.begin(), trace.states.end() );
    std::reverse( trace.inputs.begin(), trace.inputs.end() );
    result.depth = layers.size() - 1;
    result.counterexample = std::move( trace );
    return result;
}

SynthesisResult synthesize( const SymbolicGame& g, const Bdd& losing, const SynthesisOptions& opts )
{
    SynthesisResult out;
    out.region = winning_region( g, losing );
    out.controller = det_strat( g, eve_quasi_strategy( g, out.region ), out.region, opts.det );
    if ( opts.rerun_reach )
        out.rerun = rerun_with_reachable( g, out.controller, opts.det );
    return out;
}

} // namespace safesynth::strategy
