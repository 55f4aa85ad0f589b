#include "doctest.h"
#include "support.hpp"

#include "safesynth/bench.hpp"
#include "safesynth/strategy.hpp"

using namespace tsupport;

namespace
{

Bdd classic_losing( game::SymbolicGame& g )
{
    return concrete_losing( g );
}

bool network_value( const game::SymbolicGame& g, const aiger::GateNetwork& net, const std::vector< bool >& a )
{
    std::vector< bool > leaves;
    for ( const auto& s : net.leaves )
    {
        const Var v = s.kind == aiger::Signal::Kind::Latch ? g.latches()[ g.latch_of_source( s.index ) ].now
                                                           : g.input_var( s.index );
        leaves.push_back( a[ v ] );
    }
    return net.evaluate( leaves );
}

} // namespace

TEST_CASE( "strategy: E1 region, quasi-strategy and controller" )
{
    auto g = game::encode( spec_of( e1_aag ) );
    bdd::Manager& mgr = g.manager();
    const Bdd e = mgr.var( g.latches()[ 0 ].now );
    const Var u = g.blocks().uncontrollable[ 0 ], c = g.blocks().controllable[ 0 ];

    const Bdd region = strategy::winning_region( g, classic_losing( g ) );
    CHECK( region == !e );

    const auto lambda = strategy::eve_quasi_strategy( g, region );
    CHECK( lambda.domain == absgame::QuasiStrategy::Domain::Eve );
    auto allowed = [ & ]( bool ev, bool uv, bool cv ) {
        std::vector< bool > a = g.state_assignment( ev ? 1 : 0 );
        a[ u ] = uv;
        a[ c ] = cv;
        return mgr.eval( lambda.relation, a );
    };
    CHECK_FALSE( allowed( false, true, false ) );
    CHECK( allowed( false, true, true ) );
    CHECK( allowed( false, false, false ) );
    CHECK( allowed( false, false, true ) );
    // outside the region anything goes
    CHECK( allowed( true, true, false ) );

    const auto ctrl = strategy::det_strat( g, lambda, region );
    REQUIRE( ctrl.functions.size() == 1 );
    const Bdd gc = ctrl.functions[ 0 ].function;
    CHECK( ( !e & mgr.var( u ) ).implies( gc ) );
    for ( Var v : mgr.support( gc ) )
        CHECK( v != c );
    CHECK( strategy::verify_controller( g.spec(), ctrl.outputs() ).safe );
}

TEST_CASE( "strategy: E2 has no winning region" )
{
    auto g = game::encode( spec_of( e2_aag ) );
    CHECK_THROWS_AS( strategy::winning_region( g, classic_losing( g ) ), strategy::InitNotWinning );
}

TEST_CASE( "strategy: empty quasi-strategy is reported" )
{
    auto g = game::encode( spec_of( e1_aag ) );
    bdd::Manager& mgr = g.manager();
    const absgame::QuasiStrategy nothing{ mgr.bdd_false(), absgame::QuasiStrategy::Domain::Eve };
    CHECK_THROWS_AS( strategy::det_strat( g, nothing, mgr.bdd_true() ), strategy::EmptyChoice );
}

TEST_CASE( "strategy: verify_controller on E1 constants" )
{
    const auto spec = spec_of( e1_aag );
    aiger::GateNetwork one, zero;
    one.output = aiger::lit_true;
    const auto safe = strategy::verify_controller( spec, { { 1, one } } );
    CHECK( safe.safe );
    CHECK_FALSE( safe.counterexample );

    const auto bad = strategy::verify_controller( spec, { { 1, zero } } );
    CHECK_FALSE( bad.safe );
    REQUIRE( bad.counterexample );
    CHECK( bad.counterexample->length() == 1 );
    CHECK( bad.counterexample->inputs[ 0 ] == std::vector< bool >{ true } );
    CHECK( bad.counterexample->states[ 0 ] == std::vector< bool >{ false } );
}

TEST_CASE( "strategy: gate lowering" )
{
    auto g = game::encode( aiger::split_inputs( bench::gen_cnt( 7 ) ) );
    bdd::Manager& mgr = g.manager();
    CHECK( strategy::bdd_to_gates( g, mgr.bdd_true() ).output == aiger::lit_true );
    CHECK( strategy::bdd_to_gates( g, mgr.bdd_false() ).output == aiger::lit_false );
    const auto wire = strategy::bdd_to_gates( g, mgr.var( g.latches()[ 2 ].now ) );
    CHECK( wire.gate_count() == 0 );
    CHECK( wire.leaves.size() == 1 );
    CHECK_THROWS_AS( strategy::bdd_to_gates( g, mgr.var( g.blocks().controllable[ 0 ] ) ), std::invalid_argument );

    std::vector< Var > vars{ g.blocks().uncontrollable[ 0 ] };
    for ( std::size_t k = 0; k < 7; ++k )
        vars.push_back( g.latches()[ k ].now );
    std::mt19937_64 rng( 41 );
    for ( int round = 0; round < 20; ++round )
    {
        const Bdd f = random_set( mgr, vars, rng );
        const auto net = strategy::bdd_to_gates( g, f );
        CHECK( net.gate_count() <= 3 * mgr.dag_size( f ) );
        for ( std::uint64_t bits = 0; bits < 256; ++bits )
        {
            std::vector< bool > a( mgr.var_count(), false );
            for ( std::size_t k = 0; k < vars.size(); ++k )
                a[ vars[ k ] ] = ( bits >> k ) & 1;
            CHECK( network_value( g, net, a ) == mgr.eval( f, a ) );
        }
    }
}

TEST_CASE( "strategy: gen_cnt(3) region matches the explicit winning set" )
{
    const auto spec = aiger::split_inputs( bench::gen_cnt( 3 ) );
    auto g = game::encode( spec );
    const auto sol = oracle::explicit_solve( oracle::build_explicit( spec ) );
    const Bdd region = strategy::winning_region( g, classic_losing( g ) );
    CHECK( states_of( g, region ) == oracle::eve_winning_set( sol ) );
}

TEST_CASE( "strategy: counters are synthesized and verified" )
{
    for ( unsigned n = 1; n <= 6; ++n )
    {
        auto g = game::encode( aiger::split_inputs( bench::gen_cnt( n ) ) );
        strategy::SynthesisOptions o;
        o.rerun_reach = true;
        const auto res = strategy::synthesize( g, classic_losing( g ), o );
        REQUIRE( res.rerun );
        CHECK( strategy::verify_controller( g.spec(), res.controller.outputs() ).safe );
        CHECK( strategy::verify_controller( g.spec(), res.rerun->outputs() ).safe );
        MESSAGE( "cnt" << n << " gates " << res.controller.gate_count() << " -> " << res.rerun->gate_count() );
    }
}

TEST_CASE( "strategy: corpus controllers are safe" )
{
    int realizable = 0;
    for ( std::size_t i = 0; i < 150; ++i )
    {
        const auto spec = corpus_spec( corpus_seed( i ) );
        auto g = game::encode( spec );
        const Bdd losing = classic_losing( g );
        if ( g.init().implies( losing ) )
            continue;
        ++realizable;
        bdd::Manager& mgr = g.manager();
        const Bdd region = strategy::winning_region( g, losing );
        const auto lambda = strategy::eve_quasi_strategy( g, region );
        // every state of the region has a move for every uncontrollable input
        const Bdd some_move = mgr.forall( mgr.exists( lambda.relation, g.cube_controllable() ), g.cube_uncontrollable() );
        CHECK( region.implies( some_move ) );

        for ( bool negated : { false, true } )
        {
            strategy::DetOptions d;
            d.restrict_negated = negated;
            const auto ctrl = strategy::det_strat( g, lambda, region, d );
            CHECK( strategy::verify_controller( spec, ctrl.outputs() ).safe );
            for ( const auto& f : ctrl.functions )
                for ( Var v : mgr.support( f.function ) )
                    CHECK( std::count( g.blocks().controllable.begin(), g.blocks().controllable.end(), v ) == 0 );
            const auto again = strategy::rerun_with_reachable( g, ctrl, d );
            CHECK( strategy::verify_controller( spec, again.outputs() ).safe );
        }
    }
    CHECK( realizable > 10 );
}
