#pragma once

// Helpers shared by the unit tests and the acceptance runner: fixtures,
// truth-table and explicit-state conversions, random sets.

#include "safesynth/absgame.hpp"
#include "safesynth/aiger.hpp"
#include "safesynth/bdd.hpp"
#include "safesynth/game.hpp"
#include "safesynth/oracle.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tsupport
{

using namespace safesynth;
using bdd::Bdd;
using bdd::Var;

// e' = e | (u & !c), bad = e
inline constexpr const char* e1_aag = "aag 5 2 1 1 2\n2\n4\n6 11\n6\n8 2 5\n10 7 9\ni0 u\ni1 controllable_c\nl0 e\n";
// e' = e | u, bad = e
inline constexpr const char* e2_aag = "aag 3 1 1 1 1\n2\n4 7\n4\n6 5 3\ni0 u\nl0 e\n";

aiger::CircuitSpec spec_of( const char* text );
aiger::CircuitSpec corpus_spec( std::uint64_t seed );
/// Seeds of the random corpus; fixed so failures can be replayed.
std::uint64_t corpus_seed( std::size_t index );

using Table = std::vector< bool >;

/// Truth table of f over variables 0..n-1 (row r assigns bit k of r to var k).
Table table_of( bdd::Manager& mgr, const Bdd& f, unsigned n );
/// BDD of a truth table over variables 0..n-1, built by Shannon expansion.
Bdd bdd_of( bdd::Manager& mgr, const Table& t, unsigned n );
Table random_table( std::mt19937_64& rng, unsigned n );

/// Minterm over `vars` with bit k of `bits` giving the value of vars[k].
Bdd minterm( bdd::Manager& mgr, const std::vector< Var >& vars, std::uint64_t bits );
/// Random subset of the valuations of `vars` (at most 12 of them).
Bdd random_set( bdd::Manager& mgr, const std::vector< Var >& vars, std::mt19937_64& rng );

/// Explicit state set (bit k = game latch k) of a BDD over the latch variables.
std::vector< bool > states_of( const game::SymbolicGame& g, const Bdd& s );
Bdd bdd_of_states( const game::SymbolicGame& g, const std::vector< bool >& states );
bool subset( const std::vector< bool >& a, const std::vector< bool >& b );

/// Random state set over the game latches.
Bdd random_states( const game::SymbolicGame& g, std::mt19937_64& rng );
/// Random abstract set over the predicate variables.
Bdd random_abstract( const absgame::AbstractGame& a, std::mt19937_64& rng );
/// Predicate set with a random subset of visible latches; p_U is U or a
/// random set, p_R is TRUE or a random set.
absgame::PredicateSet random_predicates( game::SymbolicGame& g, std::mt19937_64& rng );

/// Does gamma(Lambda) allow uncontrollable move `u` at concrete state `q`?
bool allows( const game::SymbolicGame& g, const Bdd& concrete_adam, std::uint64_t q, std::uint64_t u );

/// mu X. seed | step(X) on the concrete game (no early stop).
Bdd concrete_losing( game::SymbolicGame& g );

} // namespace tsupport

namespace tsupport
{

/// mu X. (seed | step(X)) & bound from the empty set.
template < typename Step >
Bdd lfp( bdd::Manager& mgr, const Bdd& seed, const Bdd& bound, Step step )
{
    Bdd x = mgr.bdd_false();
    while ( true )
    {
        Bdd next = ( seed | step( x ) ) & bound;
        if ( next == x )
            return x;
        x = std::move( next );
    }
}

/// Abstract state of concrete state q (bit k of the result = predicate k).
std::uint64_t abstract_of( const absgame::AbstractGame& a, std::uint64_t q );

} // namespace tsupport
