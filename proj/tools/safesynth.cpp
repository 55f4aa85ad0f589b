// safesynth: realizability checking and controller synthesis for safety
// specifications given as aag circuits.

#include "safesynth/bench.hpp"
#include "safesynth/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace safesynth;

namespace
{

constexpr int exit_realizable = 10;
constexpr int exit_unrealizable = 20;
constexpr int exit_resource = 2;
constexpr int exit_usage = 1;
constexpr int exit_unverified = 3;

Algorithm algo_or_throw( const std::string& text )
{
    auto a = parse_algorithm( text );
    if ( !a )
        throw CLI::ValidationError( "--algo", "unknown algorithm '" + text + "' (c, ctl, a, atl)" );
    return *a;
}

int status_exit( Status s )
{
    switch ( s )
    {
    case Status::Realizable: return exit_realizable;
    case Status::Unrealizable: return exit_unrealizable;
    default: return exit_resource;
    }
}

struct Common
{
    std::string algo = "c";
    double timeout = 500;
    std::size_t node_limit = bench::node_limit_from_env();
    bool verbose = false;
};

void add_common( CLI::App* cmd, Common& c )
{
    cmd->add_option( "--algo", c.algo, "c, ctl, a or atl" )->capture_default_str();
    cmd->add_option( "--timeout", c.timeout, "seconds" )->capture_default_str();
    cmd->add_option( "--node-limit", c.node_limit, "BDD node cap (env SAFESYNTH_NODE_LIMIT)" )
        ->capture_default_str();
    cmd->add_flag( "-v,--verbose", c.verbose, "print the refinement trace" );
}

bench::RunOptions run_options( const Common& c )
{
    bench::RunOptions o;
    o.timeout_s = c.timeout;
    o.node_limit = c.node_limit;
    if ( c.verbose )
        o.log = &std::cerr;
    return o;
}

int report( const bench::RunRecord& rec )
{
    if ( !rec.error.empty() )
    {
        std::cerr << "error: " << rec.error << "\n";
        return exit_usage;
    }
    std::cout << to_string( rec.status ) << "\n";
    std::cerr << bench::csv_header() << "\n" << bench::csv_row( rec ) << "\n";
    return status_exit( rec.status );
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Safety synthesis for aag circuits with controllable_ inputs" };
    app.require_subcommand( 1 );
    int code = 0;

    Common solve_opts;
    std::string solve_path;
    auto* solve = app.add_subcommand( "solve", "decide realizability (exit 10 realizable, 20 unrealizable)" );
    solve->add_option( "file", solve_path, "aag file" )->required()->check( CLI::ExistingFile );
    add_common( solve, solve_opts );
    solve->callback( [ & ] {
        const Algorithm algo = algo_or_throw( solve_opts.algo );
        const auto aig = aiger::read_aag_file( solve_path );
        code = report( bench::run_instance( std::filesystem::path( solve_path ).stem().string(), aig, algo,
                                            run_options( solve_opts ) ) );
    } );

    Common synth_opts;
    std::string synth_path, out_path;
    bool rerun = false, negated = false;
    auto* synth = app.add_subcommand( "synth", "synthesize a controller and write the controlled circuit" );
    synth->add_option( "file", synth_path, "aag file" )->required()->check( CLI::ExistingFile );
    add_common( synth, synth_opts );
    synth->add_option( "-o,--out", out_path, "output aag (stdout when omitted)" );
    synth->add_flag( "--rerun-reach", rerun, "second determinization pass on the reachable states" );
    synth->add_flag( "--restrict-negated", negated, "restrict the negated 0-cofactor instead of the 1-cofactor" );
    synth->callback( [ & ] {
        const Algorithm algo = algo_or_throw( synth_opts.algo );
        const auto aig = aiger::read_aag_file( synth_path );
        auto o = run_options( synth_opts );
        o.synthesize = true;
        o.emit_aag = true;
        o.rerun_reach = rerun;
        o.restrict_negated = negated;
        const auto rec = bench::run_instance( std::filesystem::path( synth_path ).stem().string(), aig, algo, o );
        code = report( rec );
        if ( code != exit_realizable )
            return;
        if ( !rec.verified || !*rec.verified || !rec.controlled_aag )
        {
            std::cerr << "error: synthesized controller failed verification; nothing written\n";
            code = exit_unverified;
            return;
        }
        if ( rec.gates_first_pass )
            std::cerr << "gates: first pass " << *rec.gates_first_pass << ", re-run " << *rec.gates << "\n";
        else
            std::cerr << "gates: " << *rec.gates << "\n";
        if ( out_path.empty() )
            std::cout << *rec.controlled_aag;
        else
            std::ofstream( out_path, std::ios::binary ) << *rec.controlled_aag;
    } );

    unsigned cnt_n = 0;
    std::string cnt_out;
    auto* gen = app.add_subcommand( "gen-cnt", "write the n-bit counter benchmark" );
    gen->add_option( "n", cnt_n, "counter width" )->required()->check( CLI::Range( 1, 30 ) );
    gen->add_option( "-o,--out", cnt_out, "output file (stdout when omitted)" );
    gen->callback( [ & ] {
        const std::string text = aiger::write_aag( bench::gen_cnt( cnt_n ) );
        if ( cnt_out.empty() )
            std::cout << text;
        else
            std::ofstream( cnt_out, std::ios::binary ) << text;
    } );

    std::string bench_dir, csv_path, algos_text = "c,ctl,a,atl";
    double bench_timeout = 500;
    unsigned jobs = 1;
    bool bench_synth = false;
    std::size_t bench_nodes = bench::node_limit_from_env();
    auto* bn = app.add_subcommand( "bench", "run every algorithm on every aag file of a directory" );
    bn->add_option( "dir", bench_dir, "directory of aag files" )->required()->check( CLI::ExistingDirectory );
    bn->add_option( "--algos", algos_text, "comma separated algorithms" )->capture_default_str();
    bn->add_option( "--timeout", bench_timeout, "seconds per run" )->capture_default_str();
    bn->add_option( "--csv", csv_path, "CSV output (stdout when omitted)" );
    bn->add_option( "-j,--jobs", jobs, "parallel runs" )->capture_default_str();
    bn->add_option( "--node-limit", bench_nodes, "BDD node cap per run" )->capture_default_str();
    bn->add_flag( "--synth", bench_synth, "also synthesize and verify controllers" );
    bn->callback( [ & ] {
        std::vector< Algorithm > algos;
        std::stringstream ss( algos_text );
        for ( std::string item; std::getline( ss, item, ',' ); )
            if ( !item.empty() )
                algos.push_back( algo_or_throw( item ) );
        std::vector< std::string > files;
        for ( const auto& entry : std::filesystem::directory_iterator( bench_dir ) )
            if ( entry.is_regular_file() && entry.path().extension() == ".aag" )
                files.push_back( entry.path().string() );
        std::sort( files.begin(), files.end() );

        bench::RunOptions o;
        o.timeout_s = bench_timeout;
        o.node_limit = bench_nodes;
        o.synthesize = bench_synth;
        const auto rows = bench::run_bench( files, algos, o, jobs );

        std::ofstream file;
        if ( !csv_path.empty() )
            file.open( csv_path, std::ios::binary );
        std::ostream& os = csv_path.empty() ? std::cout : file;
        os << bench::csv_header() << "\n";
        for ( const auto& r : rows )
            os << bench::csv_row( r ) << "\n";

        // statuses of completed runs must agree per instance
        for ( std::size_t i = 0; i < files.size(); ++i )
        {
            std::optional< Status > seen;
            for ( std::size_t a = 0; a < algos.size(); ++a )
            {
                const auto& r = rows[ i * algos.size() + a ];
                if ( !r.error.empty() || ( r.status != Status::Realizable && r.status != Status::Unrealizable ) )
                    continue;
                if ( seen && *seen != r.status )
                {
                    std::cerr << "warning: algorithms disagree on " << r.instance << "\n";
                    code = exit_unverified;
                }
                seen = r.status;
            }
        }
    } );

    std::string oracle_path;
    auto* orc = app.add_subcommand( "oracle", "explicit-state reference solver" );
    orc->group( "" );
    orc->add_option( "file", oracle_path, "aag file" )->required()->check( CLI::ExistingFile );
    orc->callback( [ & ] {
        const auto spec = aiger::split_inputs( aiger::read_aag_file( oracle_path ) );
        const auto eg = oracle::build_explicit( spec );
        const auto sol = oracle::explicit_solve( eg );
        std::size_t losing = std::count( sol.losing.begin(), sol.losing.end(), true );
        const auto reach = oracle::explicit_reach_winning( eg, sol );
        std::cout << ( sol.eve_wins ? "REALIZABLE" : "UNREALIZABLE" ) << "\n"
                  << "states " << eg.state_count() << " losing " << losing << " rounds " << sol.rounds
                  << " adam-reach " << std::count( reach.begin(), reach.end(), true ) << "\n";
        code = sol.eve_wins ? exit_realizable : exit_unrealizable;
    } );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        const int rc = app.exit( e );
        return rc == 0 ? 0 : exit_usage;
    }
    catch ( const std::exception& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return code;
}
