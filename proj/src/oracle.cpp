#include "safesynth/oracle.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <string>

namespace safesynth::oracle
{

using aiger::Literal;

namespace
{

bool lit_value( const std::vector< bool >& values, Literal lit )
{
    return values[ aiger::lit_var( lit ) ] != aiger::lit_negated( lit );
}

} // namespace

ExplicitGame build_explicit( const aiger::CircuitSpec& spec )
{
    const aiger::AigFile& aig = spec.aig;
    const std::size_t nl = aig.latches.size();
    const std::size_t nu = spec.uncontrollable.size();
    const std::size_t nc = spec.controllable.size();
    if ( nl > max_latches || nu + nc > 12 )
        throw TooLarge( "explicit game too large" );

    const std::size_t circuit_states = std::size_t( 1 ) << nl;
    const std::size_t moves = std::size_t( 1 ) << ( nu + nc );

    // One full simulation per (state, u, c); kept for the error-latch decision.
    std::vector< std::uint32_t > next_bits( circuit_states * moves );
    std::vector< bool > bad( circuit_states * moves );
    std::vector< bool > inputs( aig.inputs.size() ), latch_values( nl );
    for ( std::size_t s = 0; s < circuit_states; ++s )
    {
        for ( std::size_t k = 0; k < nl; ++k )
            latch_values[ k ] = ( s >> k ) & 1;
        for ( std::size_t m = 0; m < moves; ++m )
        {
            const std::size_t u = m >> nc, c = m & ( ( std::size_t( 1 ) << nc ) - 1 );
            for ( std::size_t j = 0; j < nu; ++j )
                inputs[ spec.uncontrollable[ j ] ] = ( u >> j ) & 1;
            for ( std::size_t j = 0; j < nc; ++j )
                inputs[ spec.controllable[ j ] ] = ( c >> j ) & 1;
            const auto values = aiger::simulate_step( aig, inputs, latch_values );
            std::uint32_t nb = 0;
            for ( std::size_t k = 0; k < nl; ++k )
                if ( lit_value( values, aig.latches[ k ].next ) )
                    nb |= std::uint32_t( 1 ) << k;
            next_bits[ s * moves + m ] = nb;
            bad[ s * moves + m ] = lit_value( values, spec.bad );
        }
    }

    bool reads_inputs = false;
    for ( std::size_t s = 0; s < circuit_states && !reads_inputs; ++s )
        for ( std::size_t m = 1; m < moves; ++m )
            if ( bad[ s * moves + m ] != bad[ s * moves ] )
            {
                reads_inputs = true;
                break;
            }

    ExplicitGame eg;
    eg.uncontrollable = nu;
    eg.controllable = nc;
    eg.error_latch = reads_inputs;
    eg.latches = nl + ( reads_inputs ? 1 : 0 );
    if ( eg.latches > max_latches )
        throw TooLarge( "explicit game has more than 16 latches" );
    eg.unsafe.assign( eg.state_count(), false );
    eg.successor.assign( eg.state_count() * moves, 0 );
    const std::uint32_t err_bit = std::uint32_t( 1 ) << nl;
    for ( std::size_t q = 0; q < eg.state_count(); ++q )
    {
        const std::size_t s = q & ( circuit_states - 1 );
        const bool err = reads_inputs && ( q & err_bit );
        eg.unsafe[ q ] = reads_inputs ? err : bad[ s * moves ];
        for ( std::size_t m = 0; m < moves; ++m )
        {
            std::uint32_t succ = next_bits[ s * moves + m ];
            if ( reads_inputs && ( err || bad[ s * moves + m ] ) )
                succ |= err_bit;
            // move index m is u * 2^nc + c, matching next()
            eg.successor[ q * moves + m ] = succ;
        }
    }
    return eg;
}

ExplicitSolution explicit_solve( const ExplicitGame& eg )
{
    const std::size_t n = eg.state_count();
    ExplicitSolution sol;
    sol.losing = eg.unsafe;
    sol.rank.assign( n, not_losing );
    sol.winning_moves.assign( n, {} );
    for ( std::size_t q = 0; q < n; ++q )
        if ( eg.unsafe[ q ] )
            sol.rank[ q ] = 0;

    sol.rounds = 1;
    for ( std::uint32_t r = 1;; ++r )
    {
        ++sol.rounds;
        std::vector< std::size_t > added;
        for ( std::size_t q = 0; q < n; ++q )
        {
            if ( sol.losing[ q ] )
                continue;
            for ( std::size_t u = 0; u < eg.u_moves(); ++u )
            {
                bool forced = true;
                for ( std::size_t c = 0; c < eg.c_moves() && forced; ++c )
                    forced = sol.losing[ eg.next( q, u, c ) ];
                if ( forced )
                {
                    added.push_back( q );
                    break;
                }
            }
        }
        if ( added.empty() )
            break;
        for ( std::size_t q : added )
        {
            sol.losing[ q ] = true;
            sol.rank[ q ] = r;
        }
    }

    for ( std::size_t q = 0; q < n; ++q )
    {
        if ( sol.rank[ q ] == not_losing || sol.rank[ q ] == 0 )
            continue;
        for ( std::size_t u = 0; u < eg.u_moves(); ++u )
        {
            bool decreasing = true;
            for ( std::size_t c = 0; c < eg.c_moves() && decreasing; ++c )
                decreasing = sol.rank[ eg.next( q, u, c ) ] < sol.rank[ q ];
            if ( decreasing )
                sol.winning_moves[ q ].push_back( static_cast< std::uint32_t >( u ) );
        }
    }
    sol.eve_wins = !sol.losing[ eg.init ];
    return sol;
}

std::vector< bool > explicit_reach_winning( const ExplicitGame& eg, const ExplicitSolution& sol )
{
    std::vector< bool > seen( eg.state_count(), false );
    if ( sol.eve_wins )
        return seen;
    std::deque< std::size_t > work{ eg.init };
    seen[ eg.init ] = true;
    while ( !work.empty() )
    {
        const std::size_t q = work.front();
        work.pop_front();
        if ( eg.unsafe[ q ] )
            continue;
        for ( std::uint32_t u : sol.winning_moves[ q ] )
            for ( std::size_t c = 0; c < eg.c_moves(); ++c )
            {
                const std::size_t s = eg.next( q, u, c );
                if ( !seen[ s ] )
                {
                    seen[ s ] = true;
                    work.push_back( s );
                }
            }
    }
    return seen;
}

std::vector< bool > eve_winning_set( const ExplicitSolution& sol )
{
    std::vector< bool > w( sol.losing.size() );
    for ( std::size_t q = 0; q < w.size(); ++q )
        w[ q ] = !sol.losing[ q ];
    return w;
}

aiger::AigFile random_circuit( std::uint64_t seed, const RandomCircuitOptions& opts )
{
    std::mt19937_64 rng( seed );
    auto draw = [ & ]( std::uint64_t bound ) { return static_cast< std::uint32_t >( rng() % bound ); };

    const std::uint32_t nu = draw( opts.max_uncontrollable + 1 );
    const std::uint32_t nc = draw( opts.max_controllable + 1 );
    const std::uint32_t nl = 1 + draw( opts.max_latches );
    const std::uint32_t ni = nu + nc;

    aiger::AigFile aig;
    std::vector< Literal > pool;
    auto any_lit = [ & ]() { return pool[ draw( pool.size() ) ] ^ draw( 2 ); };

    // Which input positions are controllable.
    std::vector< bool > ctrl( ni, false );
    for ( std::uint32_t k = 0; k < nc; ++k )
        ctrl[ k ] = true;
    for ( std::uint32_t k = ni; k > 1; --k )
        std::swap( ctrl[ k - 1 ], ctrl[ draw( k ) ] );

    std::uint32_t var = 0;
    for ( std::uint32_t k = 0; k < ni; ++k )
    {
        aig.inputs.push_back( aiger::make_lit( ++var ) );
        pool.push_back( aig.inputs.back() );
        aig.symbols[ { aiger::SymbolKind::Input, k } ] =
            ctrl[ k ] ? std::string( aiger::controllable_prefix ) + "c" + std::to_string( k )
                      : "u" + std::to_string( k );
    }
    for ( std::uint32_t k = 0; k < nl; ++k )
    {
        aig.latches.push_back( { aiger::make_lit( ++var ), aiger::lit_false } );
        pool.push_back( aig.latches.back().lit );
    }
    auto add_and = [ & ]( Literal a, Literal b ) {
        const Literal lhs = aiger::make_lit( ++var );
        aig.ands.push_back( { lhs, std::max( a, b ), std::min( a, b ) } );
        pool.push_back( lhs );
        return lhs;
    };
    const std::uint32_t nand = nl + draw( opts.max_extra_ands + 1 );
    for ( std::uint32_t j = 0; j < nand; ++j )
        add_and( any_lit(), any_lit() );
    for ( auto& latch : aig.latches )
        latch.next = any_lit();

    const Literal some_latch = aig.latches[ draw( nl ) ].lit;
    switch ( draw( 4 ) )
    {
    case 0:
    {
        // sticky error latch: next = l | x
        auto& latch = aig.latches[ aiger::lit_var( some_latch ) - ni - 1 ];
        latch.next = aiger::lit_not( add_and( aiger::lit_not( latch.lit ), aiger::lit_not( any_lit() ) ) );
        aig.outputs.push_back( some_latch );
        break;
    }
    case 1: aig.outputs.push_back( pool[ ni + nl + draw( pool.size() - ni - nl ) ] ^ draw( 2 ) ); break;
    case 2: aig.outputs.push_back( some_latch ); break;
    default:
        aig.outputs.push_back( add_and( aig.latches[ draw( nl ) ].lit ^ draw( 2 ), some_latch ) );
        break;
    }
    aig.max_var = var;
    return aig;
}

} // namespace safesynth::oracle
