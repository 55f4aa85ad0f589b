#include "safesynth/aiger.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace safesynth::aiger
{

const char* to_string( AigerError::Kind kind )
{
    switch ( kind )
    {
    case AigerError::Kind::MalformedHeader: return "MalformedHeader";
    case AigerError::Kind::MalformedLine: return "MalformedLine";
    case AigerError::Kind::LiteralOutOfRange: return "LiteralOutOfRange";
    case AigerError::Kind::CyclicAndDefinition: return "CyclicAndDefinition";
    case AigerError::Kind::DuplicateDefinition: return "DuplicateDefinition";
    case AigerError::Kind::UndefinedLiteral: return "UndefinedLiteral";
    case AigerError::Kind::MultipleOutputs: return "MultipleOutputs";
    case AigerError::Kind::MissingOutput: return "MissingOutput";
    case AigerError::Kind::UnsupportedFeature: return "UnsupportedFeature";
    case AigerError::Kind::DanglingReference: return "DanglingReference";
    }
    return "Unknown";
}

namespace
{

std::string format_error( AigerError::Kind kind, std::size_t line, const std::string& message )
{
    std::string out = to_string( kind );
    if ( line != 0 )
        out += " (line " + std::to_string( line ) + ")";
    return out + ": " + message;
}

std::vector< std::string_view > split_lines( std::string_view text )
{
    std::vector< std::string_view > lines;
    std::size_t start = 0;
    while ( start < text.size() )
    {
        std::size_t end = text.find( '\n', start );
        if ( end == std::string_view::npos )
            end = text.size();
        std::string_view line = text.substr( start, end - start );
        if ( !line.empty() && line.back() == '\r' )
            line.remove_suffix( 1 );
        lines.push_back( line );
        start = end + 1;
    }
    return lines;
}

std::vector< std::string_view > split_words( std::string_view line )
{
    std::vector< std::string_view > words;
    std::size_t i = 0;
    while ( i < line.size() )
    {
        while ( i < line.size() && line[ i ] == ' ' )
            ++i;
        const std::size_t start = i;
        while ( i < line.size() && line[ i ] != ' ' )
            ++i;
        if ( i > start )
            words.push_back( line.substr( start, i - start ) );
    }
    return words;
}

std::optional< std::uint32_t > parse_number( std::string_view word )
{
    std::uint32_t value = 0;
    const auto [ ptr, ec ] = std::from_chars( word.data(), word.data() + word.size(), value );
    if ( ec != std::errc() || ptr != word.data() + word.size() )
        return std::nullopt;
    return value;
}

class Parser
{
public:
    explicit Parser( std::string_view text ) : lines_( split_lines( text ) ) {}

    AigFile run()
    {
        parse_header();
        defined_.assign( aig_.max_var + 1, false );
        defined_[ 0 ] = true;

        for ( std::uint32_t k = 0; k < num_inputs_; ++k )
        {
            const auto words = numbers( next_line(), 1, 1 );
            aig_.inputs.push_back( define( words[ 0 ] ) );
        }
        for ( std::uint32_t k = 0; k < num_latches_; ++k )
        {
            const auto words = numbers( next_line(), 2, 3 );
            if ( words.size() == 3 && words[ 2 ] != 0 )
                fail( AigerError::Kind::UnsupportedFeature,
                      "latch reset value " + std::to_string( words[ 2 ] ) +
                          " is not supported; latches start at 0" );
            const Literal lit = define( words[ 0 ] );
            aig_.latches.push_back( { lit, literal( words[ 1 ] ) } );
        }
        for ( std::uint32_t k = 0; k < num_outputs_; ++k )
        {
            const auto words = numbers( next_line(), 1, 1 );
            aig_.outputs.push_back( literal( words[ 0 ] ) );
        }
        for ( std::uint32_t k = 0; k < num_ands_; ++k )
        {
            const auto words = numbers( next_line(), 3, 3 );
            const Literal lhs = define( words[ 0 ] );
            const Literal rhs0 = literal( words[ 1 ] );
            const Literal rhs1 = literal( words[ 2 ] );
            if ( rhs0 >= lhs || rhs1 >= lhs )
                fail( AigerError::Kind::CyclicAndDefinition,
                      "and gate " + std::to_string( lhs ) +
                          " must be strictly greater than its inputs" );
            aig_.ands.push_back( { lhs, rhs0, rhs1 } );
        }
        check_references();
        parse_symbols();
        return std::move( aig_ );
    }

private:
    [[noreturn]] void fail( AigerError::Kind kind, const std::string& message ) const
    {
        throw AigerError( kind, current_, message );
    }

    std::string_view next_line()
    {
        if ( current_ >= lines_.size() )
        {
            current_ = lines_.size() + 1;
            fail( AigerError::Kind::MalformedLine, "unexpected end of file" );
        }
        return lines_[ current_++ ];
    }

    std::vector< std::uint32_t > numbers( std::string_view line, std::size_t min, std::size_t max )
    {
        const auto words = split_words( line );
        if ( words.size() < min || words.size() > max )
            fail( AigerError::Kind::MalformedLine, "expected " + std::to_string( min ) +
                                                       ( min == max ? "" : "-" + std::to_string( max ) ) +
                                                       " numbers, got '" + std::string( line ) + "'" );
        std::vector< std::uint32_t > out;
        for ( auto w : words )
        {
            const auto n = parse_number( w );
            if ( !n )
                fail( AigerError::Kind::MalformedLine, "'" + std::string( w ) + "' is not a number" );
            out.push_back( *n );
        }
        return out;
    }

    void parse_header()
    {
        const std::string_view line = next_line();
        const auto words = split_words( line );
        if ( words.empty() || words[ 0 ] != "aag" )
            fail( AigerError::Kind::MalformedHeader, "expected 'aag' header" );
        if ( words.size() != 6 && words.size() != 10 )
            fail( AigerError::Kind::MalformedHeader, "expected 'aag M I L O A'" );
        std::vector< std::uint32_t > counts;
        for ( std::size_t i = 1; i < words.size(); ++i )
        {
            const auto n = parse_number( words[ i ] );
            if ( !n )
                fail( AigerError::Kind::MalformedHeader, "bad header field '" + std::string( words[ i ] ) + "'" );
            counts.push_back( *n );
        }
        for ( std::size_t i = 5; i < counts.size(); ++i )
            if ( counts[ i ] != 0 )
                fail( AigerError::Kind::UnsupportedFeature,
                      "bad/constraint/justice/fairness sections are not supported" );
        aig_.max_var = counts[ 0 ];
        num_inputs_ = counts[ 1 ];
        num_latches_ = counts[ 2 ];
        num_outputs_ = counts[ 3 ];
        num_ands_ = counts[ 4 ];
        if ( std::uint64_t{ num_inputs_ } + num_latches_ + num_ands_ > aig_.max_var )
            fail( AigerError::Kind::MalformedHeader, "M is smaller than I + L + A" );
        if ( num_outputs_ > 1 )
            fail( AigerError::Kind::MultipleOutputs,
                  "exactly one output is expected, header declares " + std::to_string( num_outputs_ ) );
    }

    Literal literal( std::uint32_t lit )
    {
        if ( lit_var( lit ) > aig_.max_var )
            fail( AigerError::Kind::LiteralOutOfRange,
                  "literal " + std::to_string( lit ) + " exceeds 2M+1" );
        uses_.emplace_back( lit, current_ );
        return lit;
    }

    Literal define( std::uint32_t lit )
    {
        if ( lit_var( lit ) > aig_.max_var )
            fail( AigerError::Kind::LiteralOutOfRange,
                  "literal " + std::to_string( lit ) + " exceeds 2M+1" );
        if ( lit_negated( lit ) || lit < 2 )
            fail( AigerError::Kind::MalformedLine,
                  "defined literal " + std::to_string( lit ) + " must be even and non-constant" );
        if ( defined_[ lit_var( lit ) ] )
            fail( AigerError::Kind::DuplicateDefinition,
                  "variable " + std::to_string( lit_var( lit ) ) + " defined twice" );
        defined_[ lit_var( lit ) ] = true;
        return lit;
    }

    void check_references()
    {
        for ( const auto& [ lit, line ] : uses_ )
            if ( !defined_[ lit_var( lit ) ] )
                throw AigerError( AigerError::Kind::UndefinedLiteral, line,
                                  "literal " + std::to_string( lit ) + " refers to an undefined variable" );
    }

    void parse_symbols()
    {
        while ( current_ < lines_.size() )
        {
            const std::string_view line = lines_[ current_++ ];
            if ( line.empty() )
                continue;
            if ( line == "c" || line.starts_with( "c " ) )
            {
                while ( current_ < lines_.size() )
                    aig_.comments.emplace_back( lines_[ current_++ ] );
                return;
            }
            const char tag = line[ 0 ];
            if ( tag != 'i' && tag != 'l' && tag != 'o' )
                fail( AigerError::Kind::UnsupportedFeature,
                      "unsupported symbol line '" + std::string( line ) + "'" );
            const std::size_t space = line.find( ' ' );
            if ( space == std::string_view::npos || space + 1 >= line.size() )
                fail( AigerError::Kind::MalformedLine, "symbol line without a name" );
            const auto index = parse_number( line.substr( 1, space - 1 ) );
            if ( !index )
                fail( AigerError::Kind::MalformedLine, "bad symbol index in '" + std::string( line ) + "'" );
            const std::uint32_t limit = tag == 'i' ? num_inputs_ : tag == 'l' ? num_latches_ : num_outputs_;
            if ( *index >= limit )
                fail( AigerError::Kind::LiteralOutOfRange,
                      "symbol index " + std::to_string( *index ) + " out of range" );
            const auto key = std::make_pair( static_cast< SymbolKind >( tag ), *index );
            if ( aig_.symbols.contains( key ) )
                fail( AigerError::Kind::DuplicateDefinition, "symbol defined twice" );
            aig_.symbols.emplace( key, std::string( line.substr( space + 1 ) ) );
        }
    }

    std::vector< std::string_view > lines_;
    std::size_t current_ = 0;
    AigFile aig_;
    std::uint32_t num_inputs_ = 0, num_latches_ = 0, num_outputs_ = 0, num_ands_ = 0;
    std::vector< bool > defined_;
    std::vector< std::pair< Literal, std::size_t > > uses_;
};

bool lit_value( const std::vector< bool >& values, Literal lit )
{
    return values[ lit_var( lit ) ] != lit_negated( lit );
}

std::vector< std::size_t > ands_by_lhs( const AigFile& aig )
{
    std::vector< std::size_t > order( aig.ands.size() );
    std::iota( order.begin(), order.end(), 0 );
    std::sort( order.begin(), order.end(),
               [ & ]( std::size_t a, std::size_t b ) { return aig.ands[ a ].lhs < aig.ands[ b ].lhs; } );
    return order;
}

std::string input_name( const AigFile& aig, std::uint32_t k )
{
    return aig.symbol( SymbolKind::Input, k ).value_or( "i" + std::to_string( k ) );
}

} // namespace

AigerError::AigerError( Kind kind, std::size_t line, const std::string& message )
    : std::runtime_error( format_error( kind, line, message ) ), kind_( kind ), line_( line )
{
}

std::optional< std::string > AigFile::symbol( SymbolKind kind, std::uint32_t index ) const
{
    if ( auto it = symbols.find( { kind, index } ); it != symbols.end() )
        return it->second;
    return std::nullopt;
}

AigFile parse_aag( std::string_view text )
{
    return Parser( text ).run();
}

AigFile read_aag_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw std::runtime_error( "cannot open " + path );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_aag( buffer.str() );
}

std::string write_aag( const AigFile& aig )
{
    std::ostringstream out;
    out << "aag " << aig.max_var << ' ' << aig.inputs.size() << ' ' << aig.latches.size() << ' '
        << aig.outputs.size() << ' ' << aig.ands.size() << '\n';
    for ( Literal in : aig.inputs )
        out << in << '\n';
    for ( const Latch& l : aig.latches )
        out << l.lit << ' ' << l.next << '\n';
    for ( Literal o : aig.outputs )
        out << o << '\n';
    for ( const AndGate& g : aig.ands )
        out << g.lhs << ' ' << g.rhs0 << ' ' << g.rhs1 << '\n';
    for ( const auto& [ key, name ] : aig.symbols )
        out << static_cast< char >( key.first ) << key.second << ' ' << name << '\n';
    if ( !aig.comments.empty() )
    {
        out << "c\n";
        for ( const auto& c : aig.comments )
            out << c << '\n';
    }
    return out.str();
}

std::vector< bool > simulate_step( const AigFile& aig, const std::vector< bool >& input_values,
                                   const std::vector< bool >& latch_values )
{
    if ( input_values.size() != aig.inputs.size() || latch_values.size() != aig.latches.size() )
        throw std::invalid_argument( "simulate_step: value vector sizes do not match the circuit" );
    std::vector< bool > values( aig.max_var + 1, false );
    for ( std::size_t k = 0; k < aig.inputs.size(); ++k )
        values[ lit_var( aig.inputs[ k ] ) ] = input_values[ k ];
    for ( std::size_t k = 0; k < aig.latches.size(); ++k )
        values[ lit_var( aig.latches[ k ].lit ) ] = latch_values[ k ];
    for ( std::size_t idx : ands_by_lhs( aig ) )
    {
        const AndGate& g = aig.ands[ idx ];
        values[ lit_var( g.lhs ) ] = lit_value( values, g.rhs0 ) && lit_value( values, g.rhs1 );
    }
    return values;
}

CircuitSpec split_inputs( const AigFile& aig )
{
    if ( aig.outputs.size() > 1 )
        throw AigerError( AigerError::Kind::MultipleOutputs, 0,
                          "a specification has exactly one output, found " +
                              std::to_string( aig.outputs.size() ) );
    if ( aig.outputs.empty() )
        throw AigerError( AigerError::Kind::MissingOutput, 0, "a specification has exactly one output" );

    CircuitSpec spec;
    spec.aig = aig;
    spec.bad = aig.outputs.front();
    for ( std::uint32_t k = 0; k < aig.inputs.size(); ++k )
    {
        const std::string name = input_name( aig, k );
        spec.input_names.push_back( name );
        if ( std::string_view( name ).starts_with( controllable_prefix ) )
            spec.controllable.push_back( k );
        else
            spec.uncontrollable.push_back( k );
    }
    for ( std::uint32_t k = 0; k < aig.latches.size(); ++k )
    {
        spec.latches.push_back( k );
        spec.latch_names.push_back( aig.symbol( SymbolKind::Latch, k ).value_or( "l" + std::to_string( k ) ) );
    }

    const bool bad_is_latch =
        !lit_negated( spec.bad ) &&
        std::any_of( aig.latches.begin(), aig.latches.end(),
                     [ & ]( const Latch& l ) { return l.lit == spec.bad; } );
    if ( !bad_is_latch && spec.bad > lit_true )
        spec.diagnostics.push_back( "bad output " + std::to_string( spec.bad ) +
                                    " is not a latch; it is treated as an error function over the current "
                                    "state and inputs" );
    return spec;
}

bool GateNetwork::evaluate( const std::vector< bool >& leaf_values ) const
{
    if ( leaf_values.size() != leaves.size() )
        throw std::invalid_argument( "GateNetwork::evaluate: wrong number of leaf values" );
    std::vector< bool > values( 1 + leaves.size() + gates.size(), false );
    for ( std::size_t k = 0; k < leaves.size(); ++k )
        values[ 1 + k ] = leaf_values[ k ];
    for ( std::size_t j = 0; j < gates.size(); ++j )
        values[ 1 + leaves.size() + j ] = lit_value( values, gates[ j ].first ) &&
                                          lit_value( values, gates[ j ].second );
    return lit_value( values, output );
}

AigFile splice_controller( const AigFile& aig, const std::vector< ControllerOutput >& controller )
{
    const CircuitSpec spec = split_inputs( aig );
    std::vector< int > entry_of( aig.inputs.size(), -1 );
    for ( std::size_t e = 0; e < controller.size(); ++e )
    {
        const std::uint32_t input = controller[ e ].input;
        if ( input >= aig.inputs.size() )
            throw AigerError( AigerError::Kind::DanglingReference, 0,
                              "controller entry for nonexistent input " + std::to_string( input ) );
        if ( entry_of[ input ] != -1 )
            throw std::invalid_argument( "controllable input " + std::to_string( input ) +
                                         " has more than one controller entry" );
        entry_of[ input ] = static_cast< int >( e );
    }
    for ( std::uint32_t k : spec.controllable )
        if ( entry_of[ k ] == -1 )
            throw std::invalid_argument( "controllable input " + spec.input_names[ k ] +
                                         " has no controller entry" );
    for ( std::uint32_t k : spec.uncontrollable )
        if ( entry_of[ k ] != -1 )
            throw std::invalid_argument( "input " + spec.input_names[ k ] + " is not controllable" );

    AigFile out;
    std::uint32_t next_var = 1;
    // old variable -> new literal
    std::vector< Literal > remap( aig.max_var + 1, lit_false );
    std::vector< bool > mapped( aig.max_var + 1, false );
    mapped[ 0 ] = true;
    auto map_lit = [ & ]( Literal lit ) -> Literal {
        return remap[ lit_var( lit ) ] ^ ( lit & 1 );
    };

    for ( std::uint32_t k : spec.uncontrollable )
    {
        const Literal lit = make_lit( next_var++ );
        remap[ lit_var( aig.inputs[ k ] ) ] = lit;
        mapped[ lit_var( aig.inputs[ k ] ) ] = true;
        out.inputs.push_back( lit );
        if ( auto name = aig.symbol( SymbolKind::Input, k ) )
            out.symbols[ { SymbolKind::Input, static_cast< std::uint32_t >( out.inputs.size() - 1 ) } ] = *name;
    }
    for ( std::uint32_t k = 0; k < aig.latches.size(); ++k )
    {
        const Literal lit = make_lit( next_var++ );
        remap[ lit_var( aig.latches[ k ].lit ) ] = lit;
        mapped[ lit_var( aig.latches[ k ].lit ) ] = true;
        if ( auto name = aig.symbol( SymbolKind::Latch, k ) )
            out.symbols[ { SymbolKind::Latch, k } ] = *name;
    }

    for ( const ControllerOutput& entry : controller )
    {
        const GateNetwork& net = entry.network;
        std::vector< Literal > local( 1 + net.leaves.size() + net.gates.size(), lit_false );
        for ( std::size_t k = 0; k < net.leaves.size(); ++k )
        {
            const Signal& s = net.leaves[ k ];
            Literal source;
            if ( s.kind == Signal::Kind::Latch )
            {
                if ( s.index >= aig.latches.size() )
                    throw AigerError( AigerError::Kind::DanglingReference, 0,
                                      "controller reads nonexistent latch " + std::to_string( s.index ) );
                source = aig.latches[ s.index ].lit;
            }
            else
            {
                if ( s.index >= aig.inputs.size() )
                    throw AigerError( AigerError::Kind::DanglingReference, 0,
                                      "controller reads nonexistent input " + std::to_string( s.index ) );
                source = aig.inputs[ s.index ];
            }
            if ( !mapped[ lit_var( source ) ] )
                throw AigerError( AigerError::Kind::DanglingReference, 0,
                                  "controller for " + spec.input_names[ entry.input ] +
                                      " reads controllable input " + spec.input_names[ s.index ] +
                                      " before it is defined" );
            local[ 1 + k ] = map_lit( source );
        }
        auto local_lit = [ & ]( Literal lit, std::size_t limit ) -> Literal {
            if ( lit_var( lit ) >= limit )
                throw AigerError( AigerError::Kind::DanglingReference, 0,
                                  "controller gate reads undefined local literal " + std::to_string( lit ) );
            return local[ lit_var( lit ) ] ^ ( lit & 1 );
        };
        for ( std::size_t j = 0; j < net.gates.size(); ++j )
        {
            const std::size_t self = 1 + net.leaves.size() + j;
            const Literal a = local_lit( net.gates[ j ].first, self );
            const Literal b = local_lit( net.gates[ j ].second, self );
            const Literal lhs = make_lit( next_var++ );
            out.ands.push_back( { lhs, a, b } );
            local[ self ] = lhs;
        }
        const Literal result = local_lit( net.output, local.size() );
        const std::uint32_t old_var = lit_var( aig.inputs[ entry.input ] );
        remap[ old_var ] = result;
        mapped[ old_var ] = true;
    }

    for ( std::size_t idx : ands_by_lhs( aig ) )
    {
        const AndGate& g = aig.ands[ idx ];
        const Literal lhs = make_lit( next_var++ );
        out.ands.push_back( { lhs, map_lit( g.rhs0 ), map_lit( g.rhs1 ) } );
        remap[ lit_var( g.lhs ) ] = lhs;
        mapped[ lit_var( g.lhs ) ] = true;
    }

    for ( std::uint32_t k = 0; k < aig.latches.size(); ++k )
        out.latches.push_back( { remap[ lit_var( aig.latches[ k ].lit ) ], map_lit( aig.latches[ k ].next ) } );
    for ( std::uint32_t k = 0; k < aig.outputs.size(); ++k )
    {
        out.outputs.push_back( map_lit( aig.outputs[ k ] ) );
        if ( auto name = aig.symbol( SymbolKind::Output, k ) )
            out.symbols[ { SymbolKind::Output, k } ] = *name;
    }
    out.max_var = next_var - 1;
    out.comments = aig.comments;
    for ( std::uint32_t k : spec.controllable )
        out.comments.push_back( "synthesized controller drives former input i" + std::to_string( k ) + " " +
                                spec.input_names[ k ] );
    return out;
}

std::string write_controlled_aag( const AigFile& aig, const std::vector< ControllerOutput >& controller )
{
    return write_aag( splice_controller( aig, controller ) );
}

} // namespace safesynth::aiger
