#include "support.hpp"

#include <stdexcept>

namespace tsupport
{

aiger::CircuitSpec spec_of( const char* text )
{
    return aiger::split_inputs( aiger::parse_aag( text ) );
}

std::uint64_t corpus_seed( std::size_t index )
{
    return 0x5eed0000ULL + index;
}

aiger::CircuitSpec corpus_spec( std::uint64_t seed )
{
    return aiger::split_inputs( oracle::random_circuit( seed ) );
}

Table table_of( bdd::Manager& mgr, const Bdd& f, unsigned n )
{
    Table t( std::size_t( 1 ) << n );
    std::vector< bool > a( mgr.var_count(), false );
    for ( std::size_t r = 0; r < t.size(); ++r )
    {
        for ( unsigned k = 0; k < n; ++k )
            a[ k ] = ( r >> k ) & 1;
        t[ r ] = mgr.eval( f, a );
    }
    return t;
}

namespace
{

Bdd build( bdd::Manager& mgr, const Table& t, unsigned n, unsigned var, std::size_t row )
{
    if ( var == n )
        return mgr.constant( t[ row ] );
    const Bdd lo = build( mgr, t, n, var + 1, row );
    const Bdd hi = build( mgr, t, n, var + 1, row | ( std::size_t( 1 ) << var ) );
    return mgr.ite( mgr.var( var ), hi, lo );
}

} // namespace

Bdd bdd_of( bdd::Manager& mgr, const Table& t, unsigned n )
{
    return build( mgr, t, n, 0, 0 );
}

Table random_table( std::mt19937_64& rng, unsigned n )
{
    Table t( std::size_t( 1 ) << n );
    // vary the density so that near-constant functions show up too
    const std::uint64_t density = 1 + rng() % 7;
    for ( std::size_t r = 0; r < t.size(); ++r )
        t[ r ] = rng() % 8 < density;
    return t;
}

Bdd minterm( bdd::Manager& mgr, const std::vector< Var >& vars, std::uint64_t bits )
{
    Bdd m = mgr.bdd_true();
    for ( std::size_t k = vars.size(); k-- > 0; )
        m &= ( ( bits >> k ) & 1 ) ? mgr.var( vars[ k ] ) : mgr.nvar( vars[ k ] );
    return m;
}

Bdd random_set( bdd::Manager& mgr, const std::vector< Var >& vars, std::mt19937_64& rng )
{
    if ( vars.size() > 12 )
        throw std::invalid_argument( "random_set: too many variables" );
    const std::uint64_t density = rng() % 9;  // 0 and 8 give the constants
    Bdd s = mgr.bdd_false();
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t( 1 ) << vars.size() ); ++bits )
        if ( rng() % 8 < density )
            s |= minterm( mgr, vars, bits );
    return s;
}

std::vector< bool > states_of( const game::SymbolicGame& g, const Bdd& s )
{
    std::vector< bool > out( std::size_t( 1 ) << g.latch_count() );
    for ( std::uint64_t q = 0; q < out.size(); ++q )
        out[ q ] = g.manager().eval( s, g.state_assignment( q ) );
    return out;
}

Bdd bdd_of_states( const game::SymbolicGame& g, const std::vector< bool >& states )
{
    bdd::Manager& mgr = g.manager();
    Bdd s = mgr.bdd_false();
    for ( std::uint64_t q = 0; q < states.size(); ++q )
        if ( states[ q ] )
            s |= minterm( mgr, g.blocks().latch_now, q );
    return s;
}

bool subset( const std::vector< bool >& a, const std::vector< bool >& b )
{
    for ( std::size_t i = 0; i < a.size(); ++i )
        if ( a[ i ] && !b[ i ] )
            return false;
    return true;
}

Bdd random_states( const game::SymbolicGame& g, std::mt19937_64& rng )
{
    return random_set( g.manager(), g.blocks().latch_now, rng );
}

Bdd random_abstract( const absgame::AbstractGame& a, std::mt19937_64& rng )
{
    std::vector< Var > vars;
    for ( const auto& p : a.predicates().predicates() )
        vars.push_back( p.now );
    return random_set( a.manager(), vars, rng );
}

absgame::PredicateSet random_predicates( game::SymbolicGame& g, std::mt19937_64& rng )
{
    std::vector< std::size_t > visible;
    for ( std::size_t k = 0; k < g.latch_count(); ++k )
        if ( rng() % 2 )
            visible.push_back( k );
    const Bdd unsafe_def = rng() % 2 ? g.unsafe() : random_states( g, rng );
    const Bdd reach_def = rng() % 2 ? g.manager().bdd_true() : random_states( g, rng );
    return absgame::PredicateSet( g, unsafe_def, reach_def, visible );
}

bool allows( const game::SymbolicGame& g, const Bdd& concrete_adam, std::uint64_t q, std::uint64_t u )
{
    std::vector< bool > a = g.state_assignment( q );
    const auto& xu = g.blocks().uncontrollable;
    for ( std::size_t j = 0; j < xu.size(); ++j )
        a[ xu[ j ] ] = ( u >> j ) & 1;
    return g.manager().eval( concrete_adam, a );
}

Bdd concrete_losing( game::SymbolicGame& g )
{
    game::ClassicOptions o;
    o.stop_at_init = false;
    return game::solve_classic( g, Algorithm::CTL, o ).losing;
}

} // namespace tsupport

namespace tsupport
{

std::uint64_t abstract_of( const absgame::AbstractGame& a, std::uint64_t q )
{
    const auto& g = a.concrete();
    const auto assignment = g.state_assignment( q );
    std::uint64_t bits = 0;
    const auto& preds = a.predicates().predicates();
    for ( std::size_t k = 0; k < preds.size(); ++k )
        if ( g.manager().eval( preds[ k ].definition, assignment ) )
            bits |= std::uint64_t( 1 ) << k;
    return bits;
}

} // namespace tsupport
