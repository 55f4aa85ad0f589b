#include "safesynth/cegar.hpp"

#include <algorithm>
#include <memory>
#include <ostream>

namespace safesynth::cegar
{

const char* to_string( Decision d )
{
    switch ( d )
    {
    case Decision::InitInUnder: return "init-in-under";
    case Decision::InitOutsideOver: return "init-outside-over";
    case Decision::ConcreteFixpoint: return "concrete-fixpoint";
    case Decision::Refined: return "refined";
    }
    return "?";
}

namespace
{

// mu X. (seed | step(X)) & bound, starting from the empty set.
template < typename Step >
Bdd bounded_lfp( bdd::Manager& mgr, const Bdd& seed, const Bdd& bound, Step step, std::size_t& iterations )
{
    Bdd current = mgr.bdd_false();
    while ( true )
    {
        Bdd next = ( seed | step( current ) ) & bound;
        ++iterations;
        if ( next == current )
            return current;
        current = std::move( next );
    }
}

} // namespace

std::size_t select_refinement_latch( SymbolicGame& g, const PredicateSet& preds, const Bdd& unsafe_new )
{
    bdd::Manager& mgr = g.manager();
    std::vector< Var > visible_vars;
    for ( std::size_t k : preds.visible_latches() )
        visible_vars.push_back( g.latches()[ k ].now );

    std::optional< std::size_t > useful, interesting, fallback;
    auto better = [ & ]( const std::optional< std::size_t >& cur, std::size_t k ) {
        return !cur || g.latches()[ k ].aiger_var < g.latches()[ *cur ].aiger_var;
    };
    for ( std::size_t k = 0; k < g.latch_count(); ++k )
    {
        if ( preds.is_visible( k ) )
            continue;
        if ( better( fallback, k ) )
            fallback = k;
        const Bdd m = mgr.var( g.latches()[ k ].now );
        if ( m.implies( unsafe_new ) || ( !m ).implies( unsafe_new ) )
            continue;
        if ( better( interesting, k ) )
            interesting = k;
        bool reads_visible = false;
        for ( Var v : mgr.support( g.latches()[ k ].next_fn ) )
            reads_visible = reads_visible
                            || std::find( visible_vars.begin(), visible_vars.end(), v ) != visible_vars.end();
        if ( reads_visible && better( useful, k ) )
            useful = k;
    }
    if ( useful )
        return *useful;
    if ( interesting )
        return *interesting;
    if ( fallback )
        return *fallback;
    throw NoLatchAvailable();
}

PredicateSet refine( SymbolicGame& g, const PredicateSet& preds, const Bdd& unsafe_new, const Bdd& reach_new )
{
    std::vector< std::size_t > visible = preds.visible_latches();
    visible.push_back( select_refinement_latch( g, preds, unsafe_new ) );
    return PredicateSet( g, unsafe_new, reach_new, visible );
}

CegarResult abs_synth( SymbolicGame& g, Algorithm variant, const CegarOptions& opts )
{
    if ( variant != Algorithm::A && variant != Algorithm::ATL )
        throw std::invalid_argument( "abs_synth handles the A and A-TL variants only" );
    const bool mono = variant == Algorithm::A;

    CegarResult out;
    SolveResult& result = out.result;
    try
    {
        bdd::Manager& mgr = g.manager();
        if ( mono )
            g.build_transition();

        auto abs = std::make_unique< AbstractGame >( g, PredicateSet( g, g.unsafe(), mgr.bdd_true(), {} ) );
        Bdd unsafe_abs = abs->alpha_under( g.unsafe() );
        Bdd reach_abs = mgr.bdd_true();

        for ( std::size_t round = 1;; ++round )
        {
            AbstractGame& a = *abs;
            if ( mono )
                a.build_transition();
            auto under = [ & ]( const Bdd& s ) { return mono ? absgame::upre_under( a, s ) : absgame::upre_under_part( a, s ); };
            auto over = [ & ]( const Bdd& s ) { return mono ? absgame::upre_over( a, s ) : absgame::upre_over_part( a, s ); };

            RoundTrace tr;
            tr.round = round;
            tr.predicates = a.predicates().size();

            const Bdd w_under = bounded_lfp( mgr, unsafe_abs, reach_abs, under, result.iterations );
            tr.w_under_nodes = mgr.dag_size( w_under );
            if ( opts.on_round )
                opts.on_round( { Stage::UnderFixpoint, round, a, unsafe_abs, reach_abs, w_under, nullptr } );

            auto finish = [ & ]( Decision d, Status s ) {
                tr.decision = d;
                result.status = s;
                result.losing = a.gamma( w_under );
                out.trace.push_back( tr );
                out.visible_latches = a.predicates().visible_latches();
                if ( opts.log )
                    *opts.log << "round " << round << " |P|=" << tr.predicates << " W_u=" << tr.w_under_nodes
                              << " W_o=" << tr.w_over_nodes << " " << to_string( d ) << "\n";
            };

            if ( a.init_abs().implies( w_under ) )
            {
                finish( Decision::InitInUnder, Status::Unrealizable );
                return out;
            }

            Bdd prev = mgr.bdd_false();
            Bdd w_over;
            absgame::QuasiStrategy quasi{ mgr.bdd_false(), absgame::QuasiStrategy::Domain::AdamAbstract };
            while ( reach_abs != prev )
            {
                prev = reach_abs;
                w_over = bounded_lfp( mgr, w_under, reach_abs, over, result.iterations );
                tr.w_over_nodes = mgr.dag_size( w_over );
                if ( opts.on_round )
                    opts.on_round( { Stage::OverFixpoint, round, a, unsafe_abs, reach_abs, w_under, &w_over } );
                if ( !a.init_abs().implies( w_over ) )
                {
                    finish( Decision::InitOutsideOver, Status::Realizable );
                    return out;
                }
                quasi = absgame::adam_quasi_strategy( a, w_over );
                auto post = [ & ]( const Bdd& s ) {
                    return mono ? absgame::post_abs( a, s, quasi ) : absgame::post_over_part( a, s, quasi );
                };
                reach_abs = bounded_lfp( mgr, a.init_abs(), reach_abs, post, tr.reach_iterations );
            }

            const Bdd w_under_conc = a.gamma( w_under );
            const Bdd reach_conc = a.gamma( reach_abs );
            const Bdd w_prime = absgame::upre_concrete_guided( g, a.concretize( quasi ), w_under_conc, reach_conc );
            if ( w_prime.implies( w_under_conc ) )
            {
                finish( Decision::ConcreteFixpoint, Status::Realizable );
                return out;
            }

            const Bdd unsafe_new = w_prime | w_under_conc;
            PredicateSet next = refine( g, a.predicates(), unsafe_new, reach_conc );
            tr.refined_latch = next.visible_latches().back();
            out.trace.push_back( tr );
            if ( opts.log )
                *opts.log << "round " << round << " |P|=" << tr.predicates << " W_u=" << tr.w_under_nodes
                          << " W_o=" << tr.w_over_nodes << " refine " << g.latches()[ tr.refined_latch ].name
                          << "\n";
            ++result.rounds;

            abs = std::make_unique< AbstractGame >( g, std::move( next ) );
            unsafe_abs = abs->alpha_under( unsafe_new );
            reach_abs = abs->alpha_over( reach_conc );
        }
    }
    catch ( const bdd::ResourceExhausted& e )
    {
        result.status = e.kind() == bdd::ResourceExhausted::Kind::Timeout ? Status::Timeout : Status::NodeLimit;
        result.detail = e.what();
    }
    return out;
}

} // namespace safesynth::cegar
