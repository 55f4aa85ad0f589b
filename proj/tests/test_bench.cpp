#include "doctest.h"
#include "support.hpp"

#include "safesynth/bench.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace tsupport;

TEST_CASE( "bench: gen_cnt sizes and guard" )
{
    for ( unsigned n : { 1u, 5u, 30u } )
    {
        const auto aig = bench::gen_cnt( n );
        CHECK( aig.latches.size() == n + 1 );
        CHECK( aig.inputs.size() == 2 );
        CHECK( aig.outputs.size() == 1 );
    }
    CHECK_THROWS( bench::gen_cnt( 0 ) );
    CHECK_THROWS( bench::gen_cnt( 31 ) );
}

TEST_CASE( "bench: explicit check of cnt(3)" )
{
    const auto eg = oracle::build_explicit( aiger::split_inputs( bench::gen_cnt( 3 ) ) );
    const auto sol = oracle::explicit_solve( eg );
    CHECK( sol.eve_wins );
    // losing = err set, or counter 111 (err rises next step)
    for ( std::uint64_t q = 0; q < eg.state_count(); ++q )
        CHECK( sol.losing[ q ] == ( ( q & 8 ) != 0 || ( q & 7 ) == 7 ) );
}

TEST_CASE( "bench: run records and CSV" )
{
    CHECK( bench::csv_header() == "instance,algo,status,time_ms,iterations,rounds,peak_nodes,gates" );
    for ( Algorithm algo : { Algorithm::C, Algorithm::CTL, Algorithm::A, Algorithm::ATL } )
    {
        bench::RunOptions o;
        o.synthesize = true;
        o.emit_aag = true;
        const auto r = bench::run_instance( "e1", aiger::parse_aag( e1_aag ), algo, o );
        CHECK( r.error.empty() );
        CHECK( r.status == Status::Realizable );
        REQUIRE( r.verified );
        CHECK( *r.verified );
        CHECK( r.gates );
        CHECK( r.controlled_aag );
        const std::string row = bench::csv_row( r );
        CHECK( row.rfind( std::string( "e1," ) + to_string( algo ) + ",REALIZABLE,", 0 ) == 0 );
        CHECK( std::count( row.begin(), row.end(), ',' ) == 7 );

        const auto u = bench::run_instance( "e2", aiger::parse_aag( e2_aag ), algo, o );
        CHECK( u.status == Status::Unrealizable );
        CHECK_FALSE( u.gates );
        CHECK( bench::csv_row( u ).back() == ',' );
    }
}

TEST_CASE( "bench: node limit is a status, not an error" )
{
    bench::RunOptions o;
    o.node_limit = 200;
    const auto r = bench::run_instance( "cnt10", bench::gen_cnt( 10 ), Algorithm::C, o );
    CHECK( r.error.empty() );
    CHECK( r.status == Status::NodeLimit );
    CHECK( bench::status_field( r ) == to_string( Status::NodeLimit ) );
}

TEST_CASE( "bench: batch keeps input order" )
{
    const auto dir = std::filesystem::temp_directory_path() / "safesynth_bench_test";
    std::filesystem::create_directories( dir );
    const auto p1 = ( dir / "e1.aag" ).string(), p2 = ( dir / "e2.aag" ).string(),
               p3 = ( dir / "broken.aag" ).string();
    std::ofstream( p1 ) << e1_aag;
    std::ofstream( p2 ) << e2_aag;
    std::ofstream( p3 ) << "aag 1 0\n";
    const std::vector< Algorithm > algos{ Algorithm::CTL, Algorithm::ATL };
    for ( unsigned jobs : { 1u, 3u } )
    {
        const auto rows = bench::run_bench( { p1, p2, p3 }, algos, {}, jobs );
        REQUIRE( rows.size() == 6 );
        CHECK( rows[ 0 ].instance == "e1" );
        CHECK( rows[ 1 ].algo == Algorithm::ATL );
        CHECK( rows[ 0 ].status == Status::Realizable );
        CHECK( rows[ 3 ].status == Status::Unrealizable );
        CHECK( bench::status_field( rows[ 4 ] ) == "ERROR" );
    }
    std::filesystem::remove_all( dir );
}

TEST_CASE( "bench: node limit from the environment" )
{
    ::setenv( bench::node_limit_env, "12345", 1 );
    CHECK( bench::node_limit_from_env( 7 ) == 12345 );
    ::setenv( bench::node_limit_env, "junk", 1 );
    CHECK( bench::node_limit_from_env( 7 ) == 7 );
    ::unsetenv( bench::node_limit_env );
    CHECK( bench::node_limit_from_env( 7 ) == 7 );
}
