#pragma once

// Explicit-state reference solver for small games. It shares nothing with the
// symbolic code beyond the circuit simulator.

#include "safesynth/aiger.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace safesynth::oracle
{

class TooLarge : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t max_latches = 16;

/// States are latch valuations with bit k = game latch k: circuit latches in
/// file order, then the error latch when the bad output reads inputs.
/// Uncontrollable (resp. controllable) moves use bit j for the j-th input of
/// that kind in file order.
struct ExplicitGame
{
    std::size_t latches = 0;
    std::size_t uncontrollable = 0;
    std::size_t controllable = 0;
    bool error_latch = false;
    std::uint64_t init = 0;
    std::vector< bool > unsafe;
    /// successor[ ( state * U + u ) * C + c ]
    std::vector< std::uint32_t > successor;

    std::size_t state_count() const { return std::size_t( 1 ) << latches; }
    std::size_t u_moves() const { return std::size_t( 1 ) << uncontrollable; }
    std::size_t c_moves() const { return std::size_t( 1 ) << controllable; }
    std::uint32_t next( std::uint64_t state, std::uint64_t u, std::uint64_t c ) const
    {
        return successor[ ( state * u_moves() + u ) * c_moves() + c ];
    }
};

ExplicitGame build_explicit( const aiger::CircuitSpec& spec );

inline constexpr std::uint32_t not_losing = std::numeric_limits< std::uint32_t >::max();

struct ExplicitSolution
{
    bool eve_wins = false;
    std::vector< bool > losing;
    /// Round at which a state enters the attractor (0 for unsafe states).
    std::vector< std::uint32_t > rank;
    /// For each losing state of positive rank, the uncontrollable moves after
    /// which every controllable answer leads to a strictly smaller rank.
    std::vector< std::vector< std::uint32_t > > winning_moves;
    /// Number of attractor rounds including the one that confirms stability.
    std::size_t rounds = 0;
};

ExplicitSolution explicit_solve( const ExplicitGame& eg );

/// States visited by plays from the initial state in which Adam follows
/// winning moves, up to and including the first unsafe state. Empty when Eve
/// wins.
std::vector< bool > explicit_reach_winning( const ExplicitGame& eg, const ExplicitSolution& sol );

/// Backward-induction winning set for Eve: the complement of the attractor.
std::vector< bool > eve_winning_set( const ExplicitSolution& sol );

struct RandomCircuitOptions
{
    std::size_t max_latches = 5;
    std::size_t max_uncontrollable = 2;
    std::size_t max_controllable = 2;
    std::size_t max_extra_ands = 10;
};

/// Reproducible random circuit specification (raw mt19937_64 draws, no
/// library distributions).
aiger::AigFile random_circuit( std::uint64_t seed, const RandomCircuitOptions& opts = {} );

} // namespace safesynth::oracle
