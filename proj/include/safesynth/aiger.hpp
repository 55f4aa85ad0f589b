#pragma once

// ASCII AIGER (`aag`) circuits: parsing, writing, the controllable-input naming
// convention, and splicing synthesized controller logic back into a circuit.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace safesynth::aiger
{

using Literal = std::uint32_t;

inline constexpr Literal lit_false = 0;
inline constexpr Literal lit_true = 1;
inline constexpr std::string_view controllable_prefix = "controllable_";

inline constexpr Literal lit_var( Literal lit ) { return lit >> 1; }
inline constexpr bool lit_negated( Literal lit ) { return ( lit & 1 ) != 0; }
inline constexpr Literal lit_not( Literal lit ) { return lit ^ 1; }
inline constexpr Literal make_lit( std::uint32_t var, bool negated = false )
{
    return ( var << 1 ) | ( negated ? 1 : 0 );
}

class AigerError : public std::runtime_error
{
public:
    enum class Kind
    {
        MalformedHeader,
        MalformedLine,
        LiteralOutOfRange,
        CyclicAndDefinition,
        DuplicateDefinition,
        UndefinedLiteral,
        MultipleOutputs,
        MissingOutput,
        UnsupportedFeature,
        DanglingReference,
    };

    AigerError( Kind kind, std::size_t line, const std::string& message );

    Kind kind() const noexcept { return kind_; }
    /// 1-based source line, or 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

const char* to_string( AigerError::Kind kind );

struct Latch
{
    Literal lit;
    Literal next;
    friend bool operator==( const Latch&, const Latch& ) = default;
};

struct AndGate
{
    Literal lhs;
    Literal rhs0;
    Literal rhs1;
    friend bool operator==( const AndGate&, const AndGate& ) = default;
};

enum class SymbolKind : char { Input = 'i', Latch = 'l', Output = 'o' };

struct AigFile
{
    std::uint32_t max_var = 0;
    std::vector< Literal > inputs;
    std::vector< Latch > latches;
    std::vector< Literal > outputs;
    std::vector< AndGate > ands;
    std::map< std::pair< SymbolKind, std::uint32_t >, std::string > symbols;
    std::vector< std::string > comments;

    std::optional< std::string > symbol( SymbolKind kind, std::uint32_t index ) const;
    friend bool operator==( const AigFile&, const AigFile& ) = default;
};

AigFile parse_aag( std::string_view text );
AigFile read_aag_file( const std::string& path );
std::string write_aag( const AigFile& aig );

/// Evaluates every literal of the circuit for one step: given input and latch
/// values, returns the value of each variable (index = AIGER variable).
std::vector< bool > simulate_step( const AigFile& aig, const std::vector< bool >& input_values,
                                   const std::vector< bool >& latch_values );

/// The circuit tuple <X_u, X_c, L, (f_l), f_bad>. Inputs and latches are
/// identified by their position in the underlying file.
struct CircuitSpec
{
    AigFile aig;
    std::vector< std::uint32_t > uncontrollable;
    std::vector< std::uint32_t > controllable;
    std::vector< std::uint32_t > latches;
    Literal bad = lit_false;
    std::vector< std::string > input_names;
    std::vector< std::string > latch_names;
    std::vector< std::string > diagnostics;

    Literal next_state( std::uint32_t latch ) const { return aig.latches[ latch ].next; }
};

CircuitSpec split_inputs( const AigFile& aig );

/// A signal of the original circuit a controller may read.
struct Signal
{
    enum class Kind { Latch, Input };
    Kind kind;
    std::uint32_t index;
    friend bool operator==( const Signal&, const Signal& ) = default;
};

/// A small and-inverter network. Local literals use the AIGER encoding:
/// 0/1 are constants, variable k in [1, leaves.size()] is leaf k-1, and
/// variable leaves.size() + 1 + j is the output of gate j. Gates may only read
/// leaves and earlier gates.
struct GateNetwork
{
    std::vector< Signal > leaves;
    std::vector< std::pair< Literal, Literal > > gates;
    Literal output = lit_false;

    std::size_t gate_count() const { return gates.size(); }
    bool evaluate( const std::vector< bool >& leaf_values ) const;
};

struct ControllerOutput
{
    std::uint32_t input;  // position of the controllable input in the file
    GateNetwork network;
};

/// Removes every controllable input and defines it by its controller network.
/// Networks may read latches, uncontrollable inputs and controllable inputs
/// whose network appears earlier in the list.
std::string write_controlled_aag( const AigFile& aig, const std::vector< ControllerOutput >& controller );
AigFile splice_controller( const AigFile& aig, const std::vector< ControllerOutput >& controller );

} // namespace safesynth::aiger
