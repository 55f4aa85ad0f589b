#include "doctest.h"
#include "support.hpp"

using namespace tsupport;
using absgame::AbstractGame;

namespace
{

game::SymbolicGame mono_game( const aiger::CircuitSpec& spec )
{
    game::EncodeOptions o;
    o.monolithic = true;
    return game::encode( spec, o );
}

std::vector< std::size_t > all_latches( const game::SymbolicGame& g )
{
    std::vector< std::size_t > v( g.latch_count() );
    for ( std::size_t k = 0; k < v.size(); ++k )
        v[ k ] = k;
    return v;
}

std::vector< Var > pred_now( const AbstractGame& a )
{
    std::vector< Var > v;
    for ( const auto& p : a.predicates().predicates() )
        v.push_back( p.now );
    return v;
}

std::vector< Var > pred_next( const AbstractGame& a )
{
    std::vector< Var > v;
    for ( const auto& p : a.predicates().predicates() )
        v.push_back( p.next );
    return v;
}

} // namespace

TEST_CASE( "absgame: gamma and alpha basics" )
{
    auto g = game::encode( spec_of( e1_aag ) );
    bdd::Manager& mgr = g.manager();
    AbstractGame a( g, absgame::PredicateSet( g, g.unsafe(), mgr.bdd_true(), {} ) );
    CHECK( a.gamma( mgr.bdd_true() ).is_true() );
    CHECK( a.gamma( mgr.var( a.predicates().init_pred().now ) ) == g.init() );
    CHECK( a.alpha_over( mgr.bdd_false() ).is_false() );
    CHECK( a.alpha_under( mgr.bdd_true() ).is_true() );
    CHECK( a.gamma( a.init_abs() ) == g.init() );
}

TEST_CASE( "absgame: sandwich, Galois and the gamma definition" )
{
    std::mt19937_64 rng( 31 );
    for ( std::size_t i = 0; i < 80; ++i )
    {
        auto g = game::encode( corpus_spec( corpus_seed( i ) ) );
        AbstractGame a( g, random_predicates( g, rng ) );
        bdd::Manager& mgr = g.manager();
        for ( int k = 0; k < 4; ++k )
        {
            const Bdd s = random_states( g, rng );
            CHECK( a.gamma( a.alpha_under( s ) ).implies( s ) );
            CHECK( s.implies( a.gamma( a.alpha_over( s ) ) ) );
            const Bdd t = random_abstract( a, rng );
            CHECK( a.alpha_over( s ).implies( t ) == s.implies( a.gamma( t ) ) );
            CHECK( a.gamma( t ) == mgr.exists( t & a.abstraction_relation(), a.cube_pred() ) );
        }
    }
}

TEST_CASE( "absgame: abstract transition relation by enumeration" )
{
    std::mt19937_64 rng( 32 );
    int checked = 0;
    for ( std::size_t i = 0; checked < 40; ++i )
    {
        const auto spec = corpus_spec( corpus_seed( i ) );
        auto g = mono_game( spec );
        if ( g.latch_count() > 4 )
            continue;
        ++checked;
        AbstractGame a( g, random_predicates( g, rng ) );
        bdd::Manager& mgr = g.manager();
        const Bdd& ta = a.build_transition();

        const auto eg = oracle::build_explicit( spec );
        const auto now = pred_now( a ), next = pred_next( a );
        Bdd expected = mgr.bdd_false();
        for ( std::uint64_t q = 0; q < eg.state_count(); ++q )
            for ( std::uint64_t u = 0; u < eg.u_moves(); ++u )
                for ( std::uint64_t c = 0; c < eg.c_moves(); ++c )
                    expected |= minterm( mgr, now, abstract_of( a, q ) ) &
                                minterm( mgr, g.blocks().uncontrollable, u ) &
                                minterm( mgr, g.blocks().controllable, c ) &
                                minterm( mgr, next, abstract_of( a, eg.next( q, u, c ) ) );
        CHECK( ta == expected );

        for ( Var v : mgr.support( ta ) )
        {
            const bool ok = std::count( now.begin(), now.end(), v ) || std::count( next.begin(), next.end(), v ) ||
                            std::count( g.blocks().uncontrollable.begin(), g.blocks().uncontrollable.end(), v ) ||
                            std::count( g.blocks().controllable.begin(), g.blocks().controllable.end(), v );
            CHECK( ok );
        }
    }
}

TEST_CASE( "absgame: abstract upre sandwich and partitioned forms" )
{
    std::mt19937_64 rng( 33 );
    for ( std::size_t i = 0; i < 80; ++i )
    {
        auto g = mono_game( corpus_spec( corpus_seed( i ) ) );
        AbstractGame a( g, random_predicates( g, rng ) );
        a.build_transition();
        bdd::Manager& mgr = g.manager();
        CHECK( absgame::upre_over_part( a, mgr.bdd_false() ).is_false() );
        for ( int k = 0; k < 3; ++k )
        {
            const Bdd s = random_abstract( a, rng );
            const Bdd over = absgame::upre_over( a, s ), under = absgame::upre_under( a, s );
            CHECK( absgame::upre_over_part( a, s ) == over );
            CHECK( absgame::upre_under_part( a, s ) == under );
            // abstract states with no concrete member have no successors
            CHECK( ( under & a.alpha_over( mgr.bdd_true() ) ).implies( over ) );
            const Bdd concrete = game::upre_subst( g, a.gamma( s ) );
            CHECK( a.gamma( under ).implies( concrete ) );
            CHECK( concrete.implies( a.gamma( over ) ) );
        }
    }
}

TEST_CASE( "absgame: fixpoint sandwich" )
{
    std::mt19937_64 rng( 34 );
    for ( std::size_t i = 0; i < 80; ++i )
    {
        auto g = game::encode( corpus_spec( corpus_seed( i ) ) );
        const Bdd losing = concrete_losing( g );
        AbstractGame a( g, random_predicates( g, rng ) );
        bdd::Manager& mgr = g.manager();
        const Bdd top = mgr.bdd_true();
        const Bdd w_under = lfp( mgr, a.alpha_under( g.unsafe() ), top,
                                 [ & ]( const Bdd& s ) { return absgame::upre_under_part( a, s ); } );
        const Bdd w_over = lfp( mgr, a.alpha_over( g.unsafe() ), top,
                                [ & ]( const Bdd& s ) { return absgame::upre_over_part( a, s ); } );
        CHECK( a.gamma( w_under ).implies( losing ) );
        CHECK( losing.implies( a.gamma( w_over ) ) );
        // an abstract win for Eve is a concrete win
        if ( !a.init_abs().implies( w_over ) )
            CHECK( game::solve_classic( g, Algorithm::CTL ).status == Status::Realizable );
    }
}

TEST_CASE( "absgame: identity abstraction is exact" )
{
    std::mt19937_64 rng( 35 );
    for ( std::size_t i = 0; i < 40; ++i )
    {
        auto g = mono_game( corpus_spec( corpus_seed( i ) ) );
        bdd::Manager& mgr = g.manager();
        AbstractGame a( g, absgame::PredicateSet( g, g.unsafe(), mgr.bdd_true(), all_latches( g ) ) );
        a.build_transition();
        for ( int k = 0; k < 3; ++k )
        {
            const Bdd s = random_states( g, rng );
            CHECK( a.gamma( a.alpha_over( s ) ) == s );
            CHECK( a.gamma( a.alpha_under( s ) ) == s );
            const Bdd up = game::upre_subst( g, s );
            CHECK( a.gamma( absgame::upre_over( a, a.alpha_over( s ) ) ) == up );
            CHECK( a.gamma( absgame::upre_under( a, a.alpha_over( s ) ) ) == up );
        }
        // T^a is T with each latch renamed to its predicate
        bdd::Substitution rename;
        for ( const auto& p : a.predicates().predicates() )
            if ( p.latch )
            {
                rename.emplace_back( g.latches()[ *p.latch ].now, mgr.var( p.now ) );
                rename.emplace_back( g.latches()[ *p.latch ].next, mgr.var( p.next ) );
            }
        const Bdd renamed = mgr.compose( *g.transition(), rename );
        const Bdd consistent = a.alpha_over( mgr.bdd_true() );
        CHECK( a.transition() == ( renamed & consistent & a.to_next( consistent ) ) );
    }
}

TEST_CASE( "absgame: quasi-strategy and guided upre trivial cases" )
{
    std::mt19937_64 rng( 36 );
    for ( std::size_t i = 0; i < 30; ++i )
    {
        auto g = mono_game( corpus_spec( corpus_seed( i ) ) );
        bdd::Manager& mgr = g.manager();
        AbstractGame part( g, random_predicates( g, rng ) );
        AbstractGame mono( g, part.predicates() );
        mono.build_transition();
        const Bdd nonempty = part.alpha_over( mgr.bdd_true() );
        for ( AbstractGame* a : { &part, &mono } )
        {
            CHECK( absgame::adam_quasi_strategy( *a, mgr.bdd_false() ).relation.is_false() );
            CHECK( absgame::adam_quasi_strategy( *a, mgr.bdd_true() ).relation == nonempty );
        }
        const Bdd w = random_abstract( part, rng );
        const auto lp = absgame::adam_quasi_strategy( part, w ), lm = absgame::adam_quasi_strategy( mono, w );
        CHECK( lp.relation == lm.relation );
        CHECK( lp.domain == absgame::QuasiStrategy::Domain::AdamAbstract );

        const Bdd s = random_states( g, rng ), r = random_states( g, rng );
        const absgame::QuasiStrategy full{ mgr.bdd_true(), absgame::QuasiStrategy::Domain::AdamConcrete };
        const absgame::QuasiStrategy none{ mgr.bdd_false(), absgame::QuasiStrategy::Domain::AdamConcrete };
        CHECK( absgame::upre_concrete_guided( g, full, s, r ) == ( game::upre_subst( g, s ) & r ) );
        CHECK( absgame::upre_concrete_guided( g, none, s, r ).is_false() );

        CHECK( absgame::post_abs( mono, mgr.bdd_false(), lm ).is_false() );
        CHECK( absgame::post_over_part( part, mgr.bdd_false(), lp ).is_false() );
        const Bdd src = random_abstract( part, rng );
        CHECK( absgame::post_abs( mono, src, lm ).implies( absgame::post_over_part( part, src, lp ) ) );
    }
}

TEST_CASE( "absgame: quasi-strategy contains Adam's winning moves" )
{
    std::mt19937_64 rng( 37 );
    int unrealizable = 0;
    for ( std::size_t i = 0; i < 200; ++i )
    {
        const auto spec = corpus_spec( corpus_seed( i ) );
        const auto eg = oracle::build_explicit( spec );
        const auto sol = oracle::explicit_solve( eg );
        if ( sol.eve_wins )
            continue;
        ++unrealizable;
        const auto reach = oracle::explicit_reach_winning( eg, sol );
        auto g = game::encode( spec );
        bdd::Manager& mgr = g.manager();
        AbstractGame a( g, random_predicates( g, rng ) );
        const Bdd w_over = lfp( mgr, a.alpha_over( g.unsafe() ), mgr.bdd_true(),
                                [ & ]( const Bdd& s ) { return absgame::upre_over_part( a, s ); } );
        const auto quasi = absgame::adam_quasi_strategy( a, w_over );
        const Bdd conc = a.concretize( quasi ).relation;
        for ( std::uint64_t q = 0; q < eg.state_count(); ++q )
            if ( reach[ q ] )
                for ( std::uint32_t u : sol.winning_moves[ q ] )
                    CHECK( allows( g, conc, q, u ) );

        // every state of R(G) is covered by the abstract reach closure
        const Bdd closure = lfp( mgr, a.init_abs(), mgr.bdd_true(),
                                 [ & ]( const Bdd& s ) { return absgame::post_over_part( a, s, quasi ); } );
        CHECK( subset( reach, states_of( g, a.gamma( closure ) ) ) );

        // guided fixpoint keeps the verdict
        const Bdd guided = lfp( mgr, g.unsafe(), mgr.bdd_true(), [ & ]( const Bdd& s ) {
            return absgame::upre_concrete_guided( g, a.concretize( quasi ), s, mgr.bdd_true() );
        } );
        CHECK( g.init().implies( guided ) );
    }
    CHECK( unrealizable > 10 );
}

TEST_CASE( "absgame: guided fixpoint decides like the plain one" )
{
    std::mt19937_64 rng( 38 );
    for ( std::size_t i = 0; i < 200; ++i )
    {
        auto g = game::encode( corpus_spec( corpus_seed( i ) ) );
        bdd::Manager& mgr = g.manager();
        AbstractGame a( g, random_predicates( g, rng ) );
        const Bdd w_over = lfp( mgr, a.alpha_over( g.unsafe() ), mgr.bdd_true(),
                                [ & ]( const Bdd& s ) { return absgame::upre_over_part( a, s ); } );
        const auto conc = a.concretize( absgame::adam_quasi_strategy( a, w_over ) );
        const Bdd guided = lfp( mgr, g.unsafe(), mgr.bdd_true(), [ & ]( const Bdd& s ) {
            return absgame::upre_concrete_guided( g, conc, s, mgr.bdd_true() );
        } );
        CHECK( g.init().implies( guided ) == g.init().implies( concrete_losing( g ) ) );
    }
}

TEST_CASE( "absgame: restricting to reachable abstract states" )
{
    std::mt19937_64 rng( 39 );
    for ( std::size_t i = 0; i < 200; ++i )
    {
        const auto spec = corpus_spec( corpus_seed( i ) );
        const auto eg = oracle::build_explicit( spec );
        const auto sol = oracle::explicit_solve( eg );
        if ( sol.eve_wins )
            continue;
        const auto reach = oracle::explicit_reach_winning( eg, sol );
        auto g = game::encode( spec );
        bdd::Manager& mgr = g.manager();
        AbstractGame a( g, random_predicates( g, rng ) );
        auto over = [ & ]( const Bdd& s ) { return absgame::upre_over_part( a, s ); };
        const Bdd seed = a.alpha_over( g.unsafe() );
        const Bdd plain = lfp( mgr, seed, mgr.bdd_true(), over );
        const Bdd r_abs = a.alpha_over( bdd_of_states( g, reach ) );
        const Bdd restricted = lfp( mgr, seed, r_abs, over );
        const Bdd r_conc = bdd_of_states( g, reach );
        CHECK( ( a.gamma( restricted ) & r_conc ) == ( a.gamma( plain ) & r_conc ) );
    }
}
