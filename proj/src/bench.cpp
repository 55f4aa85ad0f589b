#include "safesynth/bench.hpp"

#include "safesynth/cegar.hpp"
#include "safesynth/game.hpp"
#include "safesynth/strategy.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace safesynth::bench
{

using aiger::Literal;

aiger::AigFile gen_cnt( unsigned n )
{
    if ( n < 1 || n > 30 )
        throw std::invalid_argument( "gen_cnt: counter width must be in 1..30" );
    aiger::AigFile aig;
    std::uint32_t var = 0;
    const Literal u = aiger::make_lit( ++var );
    const Literal reset = aiger::make_lit( ++var );
    aig.inputs = { u, reset };
    aig.symbols[ { aiger::SymbolKind::Input, 0 } ] = "u";
    aig.symbols[ { aiger::SymbolKind::Input, 1 } ] = std::string( aiger::controllable_prefix ) + "reset";

    std::vector< Literal > bits;
    for ( unsigned i = 0; i < n; ++i )
        bits.push_back( aiger::make_lit( ++var ) );
    const Literal err = aiger::make_lit( ++var );

    auto land = [ & ]( Literal a, Literal b ) {
        const Literal lhs = aiger::make_lit( ++var );
        aig.ands.push_back( { lhs, std::max( a, b ), std::min( a, b ) } );
        return lhs;
    };
    auto lor = [ & ]( Literal a, Literal b ) { return aiger::lit_not( land( aiger::lit_not( a ), aiger::lit_not( b ) ) ); };
    auto lxor = [ & ]( Literal a, Literal b ) {
        return land( aiger::lit_not( land( a, b ) ), aiger::lit_not( land( aiger::lit_not( a ), aiger::lit_not( b ) ) ) );
    };

    Literal carry = land( u, aiger::lit_not( err ) );
    std::vector< Literal > next;
    for ( unsigned i = 0; i < n; ++i )
    {
        next.push_back( land( aiger::lit_not( reset ), lxor( bits[ i ], carry ) ) );
        if ( i + 1 < n )
            carry = land( bits[ i ], carry );
    }
    Literal full = bits[ 0 ];
    for ( unsigned i = 1; i < n; ++i )
        full = land( full, bits[ i ] );
    const Literal err_next = lor( err, full );

    for ( unsigned i = 0; i < n; ++i )
    {
        aig.latches.push_back( { bits[ i ], next[ i ] } );
        aig.symbols[ { aiger::SymbolKind::Latch, i } ] = "b" + std::to_string( i );
    }
    aig.latches.push_back( { err, err_next } );
    aig.symbols[ { aiger::SymbolKind::Latch, n } ] = "err";
    aig.outputs.push_back( err );
    aig.symbols[ { aiger::SymbolKind::Output, 0 } ] = "err";
    aig.max_var = var;
    return aig;
}

std::size_t node_limit_from_env( std::size_t fallback )
{
    const char* text = std::getenv( node_limit_env );
    if ( !text || !*text )
        return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull( text, &end, 10 );
    return ( end && *end == '\0' && v > 0 ) ? static_cast< std::size_t >( v ) : fallback;
}

RunRecord run_instance( const std::string& name, const aiger::AigFile& aig, Algorithm algo, const RunOptions& opts )
{
    using clock = std::chrono::steady_clock;
    RunRecord rec;
    rec.instance = name;
    rec.algo = algo;
    const auto start = clock::now();
    const auto deadline = start + std::chrono::duration_cast< clock::duration >(
                                      std::chrono::duration< double >( opts.timeout_s ) );
    std::optional< game::SymbolicGame > g;
    auto record_exhausted = [ & ]( const bdd::ResourceExhausted& e ) {
        rec.status = e.kind() == bdd::ResourceExhausted::Kind::Timeout ? Status::Timeout : Status::NodeLimit;
        rec.detail = e.what();
    };
    try
    {
        const aiger::CircuitSpec spec = aiger::split_inputs( aig );
        game::EncodeOptions eo;
        eo.manager.node_limit = opts.node_limit;
        g.emplace( game::encode( spec, eo ) );
        g->manager().set_deadline( deadline );

        SolveResult result;
        if ( algo == Algorithm::C || algo == Algorithm::CTL )
            result = game::solve_classic( *g, algo );
        else
        {
            cegar::CegarOptions co;
            co.log = opts.log;
            result = cegar::abs_synth( *g, algo, co ).result;
        }
        rec.status = result.status;
        rec.iterations = result.iterations;
        rec.rounds = result.rounds;
        rec.detail = result.detail;

        if ( opts.synthesize && result.status == Status::Realizable )
        {
            strategy::SynthesisOptions so;
            so.rerun_reach = opts.rerun_reach;
            so.det.restrict_negated = opts.restrict_negated;
            const auto synth = strategy::synthesize( *g, result.losing, so );
            const strategy::Controller& ctrl = synth.final_controller();
            rec.gates = ctrl.gate_count();
            if ( synth.rerun )
                rec.gates_first_pass = synth.controller.gate_count();
            strategy::VerifyOptions vo;
            vo.manager.node_limit = opts.node_limit;
            vo.deadline = deadline;
            const auto outputs = ctrl.outputs();
            rec.verified = strategy::verify_controller( spec, outputs, vo ).safe;
            if ( opts.emit_aag )
                rec.controlled_aag = aiger::write_controlled_aag( aig, outputs );
        }
    }
    catch ( const bdd::ResourceExhausted& e )
    {
        record_exhausted( e );
    }
    catch ( const std::exception& e )
    {
        rec.error = e.what();
    }
    rec.time_ms = std::chrono::duration< double, std::milli >( clock::now() - start ).count();
    if ( g )
        rec.peak_nodes = g->manager().stats().peak_nodes;
    return rec;
}

std::string csv_header()
{
    return "instance,algo,status,time_ms,iterations,rounds,peak_nodes,gates";
}

std::string status_field( const RunRecord& r )
{
    return r.error.empty() ? to_string( r.status ) : "ERROR";
}

namespace
{

std::string csv_escape( const std::string& s )
{
    if ( s.find_first_of( ",\"\n" ) == std::string::npos )
        return s;
    std::string out = "\"";
    for ( char ch : s )
    {
        if ( ch == '"' )
            out += '"';
        out += ch;
    }
    return out + "\"";
}

} // namespace

std::string csv_row( const RunRecord& r )
{
    char time[ 32 ];
    std::snprintf( time, sizeof time, "%.3f", r.time_ms );
    std::ostringstream os;
    os << csv_escape( r.instance ) << ',' << to_string( r.algo ) << ',' << status_field( r ) << ',' << time << ','
       << r.iterations << ',' << r.rounds << ',' << r.peak_nodes << ',';
    if ( r.gates )
        os << *r.gates;
    return os.str();
}

std::vector< RunRecord > run_bench( const std::vector< std::string >& files, const std::vector< Algorithm >& algos,
                                    const RunOptions& opts, unsigned jobs )
{
    const std::size_t total = files.size() * algos.size();
    std::vector< RunRecord > rows( total );
    std::atomic< std::size_t > next{ 0 };
    auto worker = [ & ] {
        for ( std::size_t k; ( k = next++ ) < total; )
        {
            const std::string& path = files[ k / algos.size() ];
            const Algorithm algo = algos[ k % algos.size() ];
            const std::string name = std::filesystem::path( path ).stem().string();
            try
            {
                rows[ k ] = run_instance( name, aiger::read_aag_file( path ), algo, opts );
            }
            catch ( const std::exception& e )
            {
                rows[ k ].instance = name;
                rows[ k ].algo = algo;
                rows[ k ].error = e.what();
            }
        }
    };
    jobs = std::max( 1u, jobs );
    std::vector< std::thread > pool;
    for ( unsigned t = 1; t < jobs; ++t )
        pool.emplace_back( worker );
    worker();
    for ( auto& t : pool )
        t.join();
    return rows;
}

} // namespace safesynth::bench
