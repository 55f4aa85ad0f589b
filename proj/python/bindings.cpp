#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "safesynth/bench.hpp"
#include "safesynth/oracle.hpp"
#include "safesynth/strategy.hpp"

namespace py = pybind11;
using namespace safesynth;

namespace
{

Algorithm algo_arg( const std::string& text )
{
    auto a = parse_algorithm( text );
    if ( !a )
        throw py::value_error( "unknown algorithm '" + text + "'" );
    return *a;
}

py::dict record_dict( const bench::RunRecord& r )
{
    py::dict d;
    d[ "status" ] = bench::status_field( r );
    d[ "algo" ] = to_string( r.algo );
    d[ "time_ms" ] = r.time_ms;
    d[ "iterations" ] = r.iterations;
    d[ "rounds" ] = r.rounds;
    d[ "peak_nodes" ] = r.peak_nodes;
    d[ "gates" ] = r.gates ? py::cast( *r.gates ) : py::none();
    d[ "verified" ] = r.verified ? py::cast( *r.verified ) : py::none();
    d[ "error" ] = r.error;
    return d;
}

} // namespace

PYBIND11_MODULE( _core, m )
{
    m.doc() = "Symbolic safety synthesis over and-inverter graph circuits";

    static py::exception< aiger::AigerError > aiger_error( m, "AigerError", PyExc_ValueError );
    py::register_exception_translator( []( std::exception_ptr p ) {
        try
        {
            if ( p )
                std::rethrow_exception( p );
        }
        catch ( const aiger::AigerError& e )
        {
            aiger_error( e.what() );
        }
    } );

    py::class_< aiger::AigFile >( m, "AigFile" )
        .def_readonly( "max_var", &aiger::AigFile::max_var )
        .def_readonly( "inputs", &aiger::AigFile::inputs )
        .def_readonly( "outputs", &aiger::AigFile::outputs )
        .def_property_readonly( "latches",
                                []( const aiger::AigFile& a ) {
                                    std::vector< std::pair< aiger::Literal, aiger::Literal > > out;
                                    for ( const auto& l : a.latches )
                                        out.emplace_back( l.lit, l.next );
                                    return out;
                                } )
        .def_property_readonly( "ands",
                                []( const aiger::AigFile& a ) {
                                    std::vector< std::tuple< aiger::Literal, aiger::Literal, aiger::Literal > > out;
                                    for ( const auto& g : a.ands )
                                        out.emplace_back( g.lhs, g.rhs0, g.rhs1 );
                                    return out;
                                } )
        .def( "write", &aiger::write_aag, "ASCII aag text" )
        .def( "__eq__", []( const aiger::AigFile& a, const aiger::AigFile& b ) { return a == b; } )
        .def( "__repr__", []( const aiger::AigFile& a ) {
            return "<AigFile M=" + std::to_string( a.max_var ) + " I=" + std::to_string( a.inputs.size() ) +
                   " L=" + std::to_string( a.latches.size() ) + " A=" + std::to_string( a.ands.size() ) + ">";
        } );

    m.def( "parse_aag", []( const std::string& text ) { return aiger::parse_aag( text ); }, py::arg( "text" ) );
    m.def( "gen_cnt", &bench::gen_cnt, py::arg( "n" ), "n-bit counter benchmark" );
    m.def( "random_circuit", []( std::uint64_t seed ) { return oracle::random_circuit( seed ); }, py::arg( "seed" ) );

    m.def(
        "solve",
        []( const aiger::AigFile& aig, const std::string& algo, double timeout ) {
            bench::RunOptions o;
            o.timeout_s = timeout;
            o.node_limit = bench::node_limit_from_env();
            const Algorithm a = algo_arg( algo );
            bench::RunRecord rec;
            {
                py::gil_scoped_release release;
                rec = bench::run_instance( "instance", aig, a, o );
            }
            return record_dict( rec );
        },
        py::arg( "aig" ), py::arg( "algo" ) = "c", py::arg( "timeout" ) = 500.0 );

    m.def(
        "synthesize",
        []( const aiger::AigFile& aig, const std::string& algo, bool rerun_reach, double timeout ) {
            bench::RunOptions o;
            o.timeout_s = timeout;
            o.node_limit = bench::node_limit_from_env();
            o.synthesize = true;
            o.emit_aag = true;
            o.rerun_reach = rerun_reach;
            const auto rec = bench::run_instance( "instance", aig, algo_arg( algo ), o );
            py::dict d = record_dict( rec );
            d[ "aag" ] = rec.controlled_aag ? py::cast( *rec.controlled_aag ) : py::none();
            return d;
        },
        py::arg( "aig" ), py::arg( "algo" ) = "c", py::arg( "rerun_reach" ) = false, py::arg( "timeout" ) = 500.0 );

    m.def(
        "verify_closed",
        []( const aiger::AigFile& aig ) {
            const auto spec = aiger::split_inputs( aig );
            const auto res = strategy::verify_controller( spec, {} );
            py::dict d;
            d[ "safe" ] = res.safe;
            d[ "depth" ] = res.depth;
            d[ "trace_length" ] = res.counterexample ? py::cast( res.counterexample->length() ) : py::none();
            return d;
        },
        py::arg( "aig" ), "model-check a circuit without controllable inputs" );

    m.def(
        "explicit_solve",
        []( const aiger::AigFile& aig ) {
            const auto eg = oracle::build_explicit( aiger::split_inputs( aig ) );
            const auto sol = oracle::explicit_solve( eg );
            std::vector< std::size_t > losing;
            for ( std::size_t q = 0; q < sol.losing.size(); ++q )
                if ( sol.losing[ q ] )
                    losing.push_back( q );
            py::dict d;
            d[ "eve_wins" ] = sol.eve_wins;
            d[ "states" ] = eg.state_count();
            d[ "losing" ] = losing;
            return d;
        },
        py::arg( "aig" ), "explicit-state reference solver (at most 16 latches)" );

#ifdef VERSION_INFO
    m.attr( "__version__" ) = VERSION_INFO;
#else
    m.attr( "__version__" ) = "dev";
#endif
}
