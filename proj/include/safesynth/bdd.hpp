#pragma once

// Reduced ordered binary decision diagrams over a fixed variable order.
//
// A Manager owns every node; Bdd is a reference-counted handle into one
// manager. Nodes are hash-consed, so two handles of the same manager denote
// the same boolean function iff they hold the same node id. Variables are
// identified with their level: variable 0 is at the top of every diagram and
// fresh variables are appended at the bottom.
//
// A manager and all its handles form one serialization domain: operations on
// one manager must not run concurrently. Distinct managers are independent.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace safesynth::bdd
{

using NodeId = std::uint32_t;
using Var = std::uint32_t;

class Manager;

/// Raised when an operation would exceed the manager's node cap or deadline.
/// The manager stays usable afterwards.
class ResourceExhausted : public std::runtime_error
{
public:
    enum class Kind { NodeLimit, Timeout };

    ResourceExhausted( Kind kind, const std::string& what )
        : std::runtime_error( what ), kind_( kind ) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Operands of one operation belong to different managers (or are null).
class ManagerMismatch : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

enum class BinaryOp { And, Or, Xor, Implies, Iff };

class Bdd
{
public:
    Bdd() = default;
    Bdd( const Bdd& other );
    Bdd( Bdd&& other ) noexcept;
    Bdd& operator=( const Bdd& other );
    Bdd& operator=( Bdd&& other ) noexcept;
    ~Bdd();

    bool is_null() const noexcept { return mgr_ == nullptr; }
    bool is_true() const noexcept { return mgr_ && id_ == 1; }
    bool is_false() const noexcept { return mgr_ && id_ == 0; }
    bool is_constant() const noexcept { return mgr_ && id_ <= 1; }

    Manager* manager() const noexcept { return mgr_; }
    NodeId id() const noexcept { return id_; }

    /// Top variable; only meaningful for non-constant diagrams.
    Var top_var() const;
    Bdd high() const;
    Bdd low() const;

    Bdd operator!() const;
    Bdd operator&( const Bdd& rhs ) const;
    Bdd operator|( const Bdd& rhs ) const;
    Bdd operator^( const Bdd& rhs ) const;
    Bdd& operator&=( const Bdd& rhs );
    Bdd& operator|=( const Bdd& rhs );

    /// Set inclusion: every assignment satisfying *this satisfies rhs.
    bool implies( const Bdd& rhs ) const;
    Bdd iff( const Bdd& rhs ) const;

    friend bool operator==( const Bdd& a, const Bdd& b ) noexcept
    {
        return a.mgr_ == b.mgr_ && a.id_ == b.id_;
    }

private:
    friend class Manager;
    Bdd( Manager* mgr, NodeId id );

    Manager* mgr_ = nullptr;
    NodeId id_ = 0;
};

struct ManagerOptions
{
    std::size_t node_limit = 50'000'000;
    unsigned cache_log2 = 16;
};

struct ManagerStats
{
    std::size_t live_nodes = 0;
    std::size_t peak_nodes = 0;
    std::size_t gc_runs = 0;
    std::size_t cache_hits = 0;
    std::size_t cache_lookups = 0;
};

/// Simultaneous substitution: each listed variable is replaced by its function.
using Substitution = std::vector< std::pair< Var, Bdd > >;

class Manager
{
public:
    explicit Manager( ManagerOptions options = {} );
    Manager( const Manager& ) = delete;
    Manager& operator=( const Manager& ) = delete;
    ~Manager();

    Bdd bdd_true();
    Bdd bdd_false();
    Bdd constant( bool value ) { return value ? bdd_true() : bdd_false(); }

    Var new_var();
    std::size_t var_count() const noexcept { return var_count_; }
    Bdd var( Var v );
    Bdd nvar( Var v );

    Bdd apply( BinaryOp op, const Bdd& f, const Bdd& g );
    Bdd negate( const Bdd& f );
    Bdd ite( const Bdd& f, const Bdd& g, const Bdd& h );

    /// Conjunction of the positive literals of `vars`, used as a quantifier block.
    Bdd cube( std::span< const Var > vars );
    Bdd exists( const Bdd& f, const Bdd& cube );
    Bdd forall( const Bdd& f, const Bdd& cube );
    /// exists(f & g, cube) without building the conjunction.
    Bdd and_exists( const Bdd& f, const Bdd& g, const Bdd& cube );

    Bdd compose( const Bdd& f, const Substitution& subst );
    /// Coudert-Madre restrict: agrees with f wherever care holds.
    Bdd restrict( const Bdd& f, const Bdd& care );
    Bdd cofactor( const Bdd& f, Var v, bool value );

    std::vector< Var > support( const Bdd& f );
    bool eval( const Bdd& f, const std::vector< bool >& assignment ) const;
    /// One satisfying assignment of f (indexed by variable), or nullopt if f is false.
    /// Variables outside f's support are set to false.
    std::optional< std::vector< bool > > pick_one( const Bdd& f ) const;
    std::size_t dag_size( const Bdd& f ) const;
    std::size_t dag_size( std::span< const Bdd > fs ) const;

    std::string to_dot( const Bdd& f,
                        const std::function< std::string( Var ) >& var_name = {} ) const;

    void set_deadline( std::chrono::steady_clock::time_point deadline );
    void clear_deadline();
    void set_node_limit( std::size_t limit ) { options_.node_limit = limit; }
    std::size_t node_limit() const noexcept { return options_.node_limit; }

    /// Reclaims nodes not reachable from any live handle.
    void collect_garbage();
    ManagerStats stats() const;

    // Handle reference counting; used by Bdd only.
    void ref( NodeId id ) noexcept;
    void deref( NodeId id ) noexcept;

    // Node inspection.
    Var node_var( NodeId id ) const { return nodes_[ id ].var; }
    NodeId node_low( NodeId id ) const { return nodes_[ id ].low; }
    NodeId node_high( NodeId id ) const { return nodes_[ id ].high; }

private:
    struct Node
    {
        Var var;
        NodeId low;
        NodeId high;
        NodeId next;
    };

    struct CacheEntry
    {
        std::uint32_t op;
        NodeId a;
        NodeId b;
        NodeId c;
        NodeId result;
    };

    enum CacheOp : std::uint32_t
    {
        OpNone = 0, OpAnd, OpOr, OpXor, OpNot, OpIte, OpExists, OpForall,
        OpAndExists, OpRestrict
    };

    Bdd wrap( NodeId id ) { return Bdd( this, id ); }
    void check( const Bdd& f ) const;
    void maybe_collect();

    NodeId make_node( Var var, NodeId low, NodeId high );
    Var level( NodeId id ) const { return nodes_[ id ].var; }

    bool cache_lookup( std::uint32_t op, NodeId a, NodeId b, NodeId c, NodeId& out );
    void cache_insert( std::uint32_t op, NodeId a, NodeId b, NodeId c, NodeId result );
    void resize_unique( std::size_t buckets );
    void grow_cache();

    NodeId not_rec( NodeId f );
    NodeId apply_rec( CacheOp op, NodeId f, NodeId g );
    NodeId ite_rec( NodeId f, NodeId g, NodeId h );
    NodeId quant_rec( CacheOp op, NodeId f, NodeId cube );
    NodeId and_exists_rec( NodeId f, NodeId g, NodeId cube );
    NodeId restrict_rec( NodeId f, NodeId care );

    ManagerOptions options_;
    std::vector< Node > nodes_;
    std::vector< std::uint32_t > refs_;
    std::vector< NodeId > buckets_;
    std::vector< CacheEntry > cache_;
    NodeId free_list_ = 0;
    std::size_t free_count_ = 0;
    std::size_t var_count_ = 0;
    std::size_t gc_threshold_;
    std::size_t peak_live_ = 0;
    std::size_t gc_runs_ = 0;
    std::size_t cache_hits_ = 0;
    std::size_t cache_lookups_ = 0;
    std::optional< std::chrono::steady_clock::time_point > deadline_;
    std::uint32_t deadline_tick_ = 0;
    std::vector< NodeId > var_nodes_;
};

} // namespace safesynth::bdd
