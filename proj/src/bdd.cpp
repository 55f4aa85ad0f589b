#include "safesynth/bdd.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace safesynth::bdd
{

namespace
{

constexpr Var terminal_var = std::numeric_limits< Var >::max();
constexpr Var free_var = terminal_var - 1;
constexpr NodeId no_node = std::numeric_limits< NodeId >::max();

inline std::size_t mix( std::uint64_t a, std::uint64_t b, std::uint64_t c )
{
    std::uint64_t h = a * 0x9E3779B97F4A7C15ULL;
    h ^= b + 0x7F4A7C159E3779B9ULL + ( h << 6 ) + ( h >> 2 );
    h ^= c * 0xC2B2AE3D27D4EB4FULL + ( h << 6 ) + ( h >> 2 );
    h ^= h >> 29;
    return static_cast< std::size_t >( h );
}

} // namespace

// ---------------------------------------------------------------------------
// Bdd handle

Bdd::Bdd( Manager* mgr, NodeId id ) : mgr_( mgr ), id_( id )
{
    if ( mgr_ )
        mgr_->ref( id_ );
}

Bdd::Bdd( const Bdd& other ) : mgr_( other.mgr_ ), id_( other.id_ )
{
    if ( mgr_ )
        mgr_->ref( id_ );
}

Bdd::Bdd( Bdd&& other ) noexcept : mgr_( other.mgr_ ), id_( other.id_ )
{
    other.mgr_ = nullptr;
    other.id_ = 0;
}

Bdd& Bdd::operator=( const Bdd& other )
{
    if ( this != &other )
    {
        if ( other.mgr_ )
            other.mgr_->ref( other.id_ );
        if ( mgr_ )
            mgr_->deref( id_ );
        mgr_ = other.mgr_;
        id_ = other.id_;
    }
    return *this;
}

Bdd& Bdd::operator=( Bdd&& other ) noexcept
{
    if ( this != &other )
    {
        if ( mgr_ )
            mgr_->deref( id_ );
        mgr_ = other.mgr_;
        id_ = other.id_;
        other.mgr_ = nullptr;
        other.id_ = 0;
    }
    return *this;
}

Bdd::~Bdd()
{
    if ( mgr_ )
        mgr_->deref( id_ );
}

Var Bdd::top_var() const
{
    if ( !mgr_ || is_constant() )
        throw std::logic_error( "top_var of a constant or null diagram" );
    return mgr_->node_var( id_ );
}

Bdd Bdd::high() const
{
    if ( !mgr_ || is_constant() )
        throw std::logic_error( "high child of a constant or null diagram" );
    return Bdd( mgr_, mgr_->node_high( id_ ) );
}

Bdd Bdd::low() const
{
    if ( !mgr_ || is_constant() )
        throw std::logic_error( "low child of a constant or null diagram" );
    return Bdd( mgr_, mgr_->node_low( id_ ) );
}

Bdd Bdd::operator!() const
{
    if ( !mgr_ )
        throw ManagerMismatch( "negation of a null diagram" );
    return mgr_->negate( *this );
}

Bdd Bdd::operator&( const Bdd& rhs ) const
{
    if ( !mgr_ )
        throw ManagerMismatch( "operation on a null diagram" );
    return mgr_->apply( BinaryOp::And, *this, rhs );
}

Bdd Bdd::operator|( const Bdd& rhs ) const
{
    if ( !mgr_ )
        throw ManagerMismatch( "operation on a null diagram" );
    return mgr_->apply( BinaryOp::Or, *this, rhs );
}

Bdd Bdd::operator^( const Bdd& rhs ) const
{
    if ( !mgr_ )
        throw ManagerMismatch( "operation on a null diagram" );
    return mgr_->apply( BinaryOp::Xor, *this, rhs );
}

Bdd& Bdd::operator&=( const Bdd& rhs )
{
    *this = *this & rhs;
    return *this;
}

Bdd& Bdd::operator|=( const Bdd& rhs )
{
    *this = *this | rhs;
    return *this;
}

bool Bdd::implies( const Bdd& rhs ) const
{
    if ( !mgr_ )
        throw ManagerMismatch( "operation on a null diagram" );
    return mgr_->apply( BinaryOp::Implies, *this, rhs ).is_true();
}

Bdd Bdd::iff( const Bdd& rhs ) const
{
    if ( !mgr_ )
        throw ManagerMismatch( "operation on a null diagram" );
    return mgr_->apply( BinaryOp::Iff, *this, rhs );
}

// ---------------------------------------------------------------------------
// Manager: storage

Manager::Manager( ManagerOptions options )
    : options_( options ), gc_threshold_( std::size_t{ 1 } << 20 )
{
    nodes_.reserve( 1024 );
    nodes_.push_back( { terminal_var, 0, 0, 0 } );
    nodes_.push_back( { terminal_var, 1, 1, 0 } );
    refs_.assign( 2, 0 );
    buckets_.assign( 1024, 0 );
    cache_.assign( std::size_t{ 1 } << options_.cache_log2, CacheEntry{ OpNone, 0, 0, 0, 0 } );
    peak_live_ = 2;
}

Manager::~Manager() = default;

void Manager::ref( NodeId id ) noexcept
{
    if ( id > 1 )
        ++refs_[ id ];
}

void Manager::deref( NodeId id ) noexcept
{
    if ( id > 1 )
    {
        assert( refs_[ id ] > 0 );
        --refs_[ id ];
    }
}

Bdd Manager::bdd_true() { return wrap( 1 ); }
Bdd Manager::bdd_false() { return wrap( 0 ); }

Var Manager::new_var()
{
    const auto v = static_cast< Var >( var_count_++ );
    var_nodes_.push_back( make_node( v, 0, 1 ) );
    return v;
}

Bdd Manager::var( Var v )
{
    if ( v >= var_count_ )
        throw std::out_of_range( "unknown variable " + std::to_string( v ) );
    return wrap( var_nodes_[ v ] );
}

Bdd Manager::nvar( Var v )
{
    if ( v >= var_count_ )
        throw std::out_of_range( "unknown variable " + std::to_string( v ) );
    return wrap( make_node( v, 1, 0 ) );
}

void Manager::check( const Bdd& f ) const
{
    if ( f.manager() != this )
        throw ManagerMismatch( "diagram belongs to a different manager" );
}

void Manager::set_deadline( std::chrono::steady_clock::time_point deadline )
{
    deadline_ = deadline;
}

void Manager::clear_deadline() { deadline_.reset(); }

ManagerStats Manager::stats() const
{
    ManagerStats s;
    s.live_nodes = nodes_.size() - free_count_;
    s.peak_nodes = peak_live_;
    s.gc_runs = gc_runs_;
    s.cache_hits = cache_hits_;
    s.cache_lookups = cache_lookups_;
    return s;
}

NodeId Manager::make_node( Var var, NodeId low, NodeId high )
{
    if ( low == high )
        return low;

    const std::size_t mask = buckets_.size() - 1;
    const std::size_t slot = mix( var, low, high ) & mask;
    for ( NodeId n = buckets_[ slot ]; n != 0; n = nodes_[ n ].next )
    {
        const Node& node = nodes_[ n ];
        if ( node.var == var && node.low == low && node.high == high )
            return n;
    }

    const std::size_t live = nodes_.size() - free_count_;
    if ( live >= options_.node_limit )
        throw ResourceExhausted( ResourceExhausted::Kind::NodeLimit,
                                 "BDD node limit of " + std::to_string( options_.node_limit ) +
                                     " exceeded" );
    if ( deadline_ && ( ++deadline_tick_ & 0x3FF ) == 0 &&
         std::chrono::steady_clock::now() > *deadline_ )
        throw ResourceExhausted( ResourceExhausted::Kind::Timeout, "deadline reached" );

    NodeId id;
    if ( free_list_ != 0 )
    {
        id = free_list_;
        free_list_ = nodes_[ id ].next;
        --free_count_;
        nodes_[ id ] = Node{ var, low, high, buckets_[ slot ] };
    }
    else
    {
        id = static_cast< NodeId >( nodes_.size() );
        nodes_.push_back( Node{ var, low, high, buckets_[ slot ] } );
        refs_.push_back( 0 );
    }
    buckets_[ slot ] = id;

    const std::size_t now_live = live + 1;
    peak_live_ = std::max( peak_live_, now_live );
    if ( now_live > 2 * buckets_.size() )
        resize_unique( buckets_.size() * 2 );
    return id;
}

void Manager::resize_unique( std::size_t buckets )
{
    buckets_.assign( buckets, 0 );
    const std::size_t mask = buckets - 1;
    for ( NodeId id = 2; id < nodes_.size(); ++id )
    {
        Node& n = nodes_[ id ];
        if ( n.var == free_var )
            continue;
        const std::size_t slot = mix( n.var, n.low, n.high ) & mask;
        n.next = buckets_[ slot ];
        buckets_[ slot ] = id;
    }
    grow_cache();
}

void Manager::grow_cache()
{
    constexpr std::size_t max_cache = std::size_t{ 1 } << 22;
    const std::size_t wanted = std::min( max_cache, buckets_.size() );
    if ( wanted > cache_.size() )
        cache_.assign( wanted, CacheEntry{ OpNone, 0, 0, 0, 0 } );
}

bool Manager::cache_lookup( std::uint32_t op, NodeId a, NodeId b, NodeId c, NodeId& out )
{
    ++cache_lookups_;
    const CacheEntry& e = cache_[ mix( op ^ ( std::uint64_t{ a } << 32 ), b, c ) & ( cache_.size() - 1 ) ];
    if ( e.op == op && e.a == a && e.b == b && e.c == c )
    {
        ++cache_hits_;
        out = e.result;
        return true;
    }
    return false;
}

void Manager::cache_insert( std::uint32_t op, NodeId a, NodeId b, NodeId c, NodeId result )
{
    cache_[ mix( op ^ ( std::uint64_t{ a } << 32 ), b, c ) & ( cache_.size() - 1 ) ] =
        CacheEntry{ op, a, b, c, result };
}

void Manager::maybe_collect()
{
    const std::size_t live = nodes_.size() - free_count_;
    if ( live < gc_threshold_ )
        return;
    collect_garbage();
    const std::size_t after = nodes_.size() - free_count_;
    if ( after * 2 > gc_threshold_ )
        gc_threshold_ *= 2;
}

void Manager::collect_garbage()
{
    std::vector< bool > marked( nodes_.size(), false );
    marked[ 0 ] = marked[ 1 ] = true;
    std::vector< NodeId > stack;
    auto push = [ & ]( NodeId id ) {
        if ( !marked[ id ] )
        {
            marked[ id ] = true;
            stack.push_back( id );
        }
    };
    for ( NodeId id = 2; id < nodes_.size(); ++id )
        if ( refs_[ id ] > 0 )
            push( id );
    for ( NodeId id : var_nodes_ )
        push( id );
    while ( !stack.empty() )
    {
        const NodeId id = stack.back();
        stack.pop_back();
        push( nodes_[ id ].low );
        push( nodes_[ id ].high );
    }

    for ( NodeId id = 2; id < nodes_.size(); ++id )
    {
        Node& n = nodes_[ id ];
        if ( n.var == free_var || marked[ id ] )
            continue;
        n.var = free_var;
        n.next = free_list_;
        free_list_ = id;
        ++free_count_;
    }

    std::fill( buckets_.begin(), buckets_.end(), 0 );
    const std::size_t mask = buckets_.size() - 1;
    for ( NodeId id = 2; id < nodes_.size(); ++id )
    {
        Node& n = nodes_[ id ];
        if ( n.var == free_var )
            continue;
        const std::size_t slot = mix( n.var, n.low, n.high ) & mask;
        n.next = buckets_[ slot ];
        buckets_[ slot ] = id;
    }
    std::fill( cache_.begin(), cache_.end(), CacheEntry{ OpNone, 0, 0, 0, 0 } );
    ++gc_runs_;
}

// ---------------------------------------------------------------------------
// Manager: recursive kernels. Node fields are copied to locals before any
// recursive call because make_node may reallocate the node vector.

NodeId Manager::not_rec( NodeId f )
{
    if ( f <= 1 )
        return f ^ 1;
    NodeId r;
    if ( cache_lookup( OpNot, f, 0, 0, r ) )
        return r;
    const Var v = nodes_[ f ].var;
    const NodeId lo = nodes_[ f ].low, hi = nodes_[ f ].high;
    const NodeId r0 = not_rec( lo );
    const NodeId r1 = not_rec( hi );
    r = make_node( v, r0, r1 );
    cache_insert( OpNot, f, 0, 0, r );
    return r;
}

NodeId Manager::apply_rec( CacheOp op, NodeId f, NodeId g )
{
    switch ( op )
    {
    case OpAnd:
        if ( f == 0 || g == 0 )
            return 0;
        if ( f == 1 )
            return g;
        if ( g == 1 || f == g )
            return f;
        break;
    case OpOr:
        if ( f == 1 || g == 1 )
            return 1;
        if ( f == 0 )
            return g;
        if ( g == 0 || f == g )
            return f;
        break;
    case OpXor:
        if ( f == g )
            return 0;
        if ( f == 0 )
            return g;
        if ( g == 0 )
            return f;
        if ( f == 1 )
            return not_rec( g );
        if ( g == 1 )
            return not_rec( f );
        break;
    default:
        assert( false );
    }
    if ( f > g )
        std::swap( f, g );

    NodeId r;
    if ( cache_lookup( op, f, g, 0, r ) )
        return r;

    const Var vf = level( f ), vg = level( g );
    const Var top = std::min( vf, vg );
    const NodeId f0 = vf == top ? nodes_[ f ].low : f;
    const NodeId f1 = vf == top ? nodes_[ f ].high : f;
    const NodeId g0 = vg == top ? nodes_[ g ].low : g;
    const NodeId g1 = vg == top ? nodes_[ g ].high : g;
    const NodeId r0 = apply_rec( op, f0, g0 );
    const NodeId r1 = apply_rec( op, f1, g1 );
    r = make_node( top, r0, r1 );
    cache_insert( op, f, g, 0, r );
    return r;
}

NodeId Manager::ite_rec( NodeId f, NodeId g, NodeId h )
{
    if ( f == 1 )
        return g;
    if ( f == 0 )
        return h;
    if ( g == h )
        return g;
    if ( g == 1 && h == 0 )
        return f;
    if ( g == 0 && h == 1 )
        return not_rec( f );
    if ( g == 1 || f == g )
        return apply_rec( OpOr, f, h );
    if ( h == 0 || f == h )
        return apply_rec( OpAnd, f, g );

    NodeId r;
    if ( cache_lookup( OpIte, f, g, h, r ) )
        return r;

    const Var top = std::min( { level( f ), level( g ), level( h ) } );
    auto lo = [ & ]( NodeId x ) { return level( x ) == top ? nodes_[ x ].low : x; };
    auto hi = [ & ]( NodeId x ) { return level( x ) == top ? nodes_[ x ].high : x; };
    const NodeId f0 = lo( f ), f1 = hi( f ), g0 = lo( g ), g1 = hi( g ), h0 = lo( h ), h1 = hi( h );
    const NodeId r0 = ite_rec( f0, g0, h0 );
    const NodeId r1 = ite_rec( f1, g1, h1 );
    r = make_node( top, r0, r1 );
    cache_insert( OpIte, f, g, h, r );
    return r;
}

NodeId Manager::quant_rec( CacheOp op, NodeId f, NodeId cube )
{
    if ( f <= 1 )
        return f;
    while ( cube > 1 && level( cube ) < level( f ) )
        cube = nodes_[ cube ].high;
    if ( cube <= 1 )
        return f;

    NodeId r;
    if ( cache_lookup( op, f, cube, 0, r ) )
        return r;

    const Var v = level( f );
    const NodeId lo = nodes_[ f ].low, hi = nodes_[ f ].high;
    if ( level( cube ) == v )
    {
        const NodeId rest = nodes_[ cube ].high;
        const NodeId r0 = quant_rec( op, lo, rest );
        if ( op == OpExists && r0 == 1 )
            r = 1;
        else if ( op == OpForall && r0 == 0 )
            r = 0;
        else
        {
            const NodeId r1 = quant_rec( op, hi, rest );
            r = apply_rec( op == OpExists ? OpOr : OpAnd, r0, r1 );
        }
    }
    else
    {
        const NodeId r0 = quant_rec( op, lo, cube );
        const NodeId r1 = quant_rec( op, hi, cube );
        r = make_node( v, r0, r1 );
    }
    cache_insert( op, f, cube, 0, r );
    return r;
}

NodeId Manager::and_exists_rec( NodeId f, NodeId g, NodeId cube )
{
    if ( f == 0 || g == 0 )
        return 0;
    if ( f == 1 && g == 1 )
        return 1;
    if ( f == 1 )
        return quant_rec( OpExists, g, cube );
    if ( g == 1 || f == g )
        return quant_rec( OpExists, f, cube );
    if ( f > g )
        std::swap( f, g );

    const Var top = std::min( level( f ), level( g ) );
    while ( cube > 1 && level( cube ) < top )
        cube = nodes_[ cube ].high;
    if ( cube <= 1 )
        return apply_rec( OpAnd, f, g );

    NodeId r;
    if ( cache_lookup( OpAndExists, f, g, cube, r ) )
        return r;

    const NodeId f0 = level( f ) == top ? nodes_[ f ].low : f;
    const NodeId f1 = level( f ) == top ? nodes_[ f ].high : f;
    const NodeId g0 = level( g ) == top ? nodes_[ g ].low : g;
    const NodeId g1 = level( g ) == top ? nodes_[ g ].high : g;
    if ( level( cube ) == top )
    {
        const NodeId rest = nodes_[ cube ].high;
        const NodeId r0 = and_exists_rec( f0, g0, rest );
        if ( r0 == 1 )
            r = 1;
        else
        {
            const NodeId r1 = and_exists_rec( f1, g1, rest );
            r = apply_rec( OpOr, r0, r1 );
        }
    }
    else
    {
        const NodeId r0 = and_exists_rec( f0, g0, cube );
        const NodeId r1 = and_exists_rec( f1, g1, cube );
        r = make_node( top, r0, r1 );
    }
    cache_insert( OpAndExists, f, g, cube, r );
    return r;
}

NodeId Manager::restrict_rec( NodeId f, NodeId care )
{
    if ( care == 1 || f <= 1 )
        return f;
    if ( care == 0 )
        return f;
    if ( f == care )
        return 1;

    NodeId r;
    if ( cache_lookup( OpRestrict, f, care, 0, r ) )
        return r;

    const Var vf = level( f ), vc = level( care );
    if ( vc < vf )
    {
        // f does not depend on the care set's top variable: drop it from care.
        const NodeId c0 = nodes_[ care ].low, c1 = nodes_[ care ].high;
        const NodeId merged = apply_rec( OpOr, c0, c1 );
        r = restrict_rec( f, merged );
    }
    else
    {
        const NodeId f0 = nodes_[ f ].low, f1 = nodes_[ f ].high;
        const NodeId c0 = vc == vf ? nodes_[ care ].low : care;
        const NodeId c1 = vc == vf ? nodes_[ care ].high : care;
        if ( c0 == 0 )
            r = restrict_rec( f1, c1 );
        else if ( c1 == 0 )
            r = restrict_rec( f0, c0 );
        else
        {
            const NodeId r0 = restrict_rec( f0, c0 );
            const NodeId r1 = restrict_rec( f1, c1 );
            r = make_node( vf, r0, r1 );
        }
    }
    cache_insert( OpRestrict, f, care, 0, r );
    return r;
}

// ---------------------------------------------------------------------------
// Manager: public operations

Bdd Manager::apply( BinaryOp op, const Bdd& f, const Bdd& g )
{
    check( f );
    check( g );
    maybe_collect();
    switch ( op )
    {
    case BinaryOp::And:
        return wrap( apply_rec( OpAnd, f.id(), g.id() ) );
    case BinaryOp::Or:
        return wrap( apply_rec( OpOr, f.id(), g.id() ) );
    case BinaryOp::Xor:
        return wrap( apply_rec( OpXor, f.id(), g.id() ) );
    case BinaryOp::Implies:
        return wrap( apply_rec( OpOr, not_rec( f.id() ), g.id() ) );
    case BinaryOp::Iff:
        return wrap( not_rec( apply_rec( OpXor, f.id(), g.id() ) ) );
    }
    throw std::logic_error( "unknown binary operation" );
}

Bdd Manager::negate( const Bdd& f )
{
    check( f );
    maybe_collect();
    return wrap( not_rec( f.id() ) );
}

Bdd Manager::ite( const Bdd& f, const Bdd& g, const Bdd& h )
{
    check( f );
    check( g );
    check( h );
    maybe_collect();
    return wrap( ite_rec( f.id(), g.id(), h.id() ) );
}

Bdd Manager::cube( std::span< const Var > vars )
{
    std::vector< Var > sorted( vars.begin(), vars.end() );
    std::sort( sorted.begin(), sorted.end(), std::greater<>() );
    sorted.erase( std::unique( sorted.begin(), sorted.end() ), sorted.end() );
    NodeId r = 1;
    for ( Var v : sorted )
    {
        if ( v >= var_count_ )
            throw std::out_of_range( "unknown variable " + std::to_string( v ) );
        r = make_node( v, 0, r );
    }
    return wrap( r );
}

Bdd Manager::exists( const Bdd& f, const Bdd& cube )
{
    check( f );
    check( cube );
    maybe_collect();
    return wrap( quant_rec( OpExists, f.id(), cube.id() ) );
}

Bdd Manager::forall( const Bdd& f, const Bdd& cube )
{
    check( f );
    check( cube );
    maybe_collect();
    return wrap( quant_rec( OpForall, f.id(), cube.id() ) );
}

Bdd Manager::and_exists( const Bdd& f, const Bdd& g, const Bdd& cube )
{
    check( f );
    check( g );
    check( cube );
    maybe_collect();
    return wrap( and_exists_rec( f.id(), g.id(), cube.id() ) );
}

Bdd Manager::compose( const Bdd& f, const Substitution& subst )
{
    check( f );
    for ( const auto& [ v, g ] : subst )
    {
        check( g );
        if ( v >= var_count_ )
            throw std::out_of_range( "unknown variable " + std::to_string( v ) );
    }
    maybe_collect();

    std::vector< NodeId > replacement( var_count_, no_node );
    Var deepest = 0;
    bool any = false;
    for ( const auto& [ v, g ] : subst )
    {
        replacement[ v ] = g.id();
        deepest = std::max( deepest, v );
        any = true;
    }
    if ( !any )
        return f;

    std::unordered_map< NodeId, NodeId > memo;
    auto rec = [ & ]( auto&& self, NodeId n ) -> NodeId {
        if ( n <= 1 || level( n ) > deepest )
            return n;
        if ( auto it = memo.find( n ); it != memo.end() )
            return it->second;
        const Var v = level( n );
        const NodeId lo = nodes_[ n ].low, hi = nodes_[ n ].high;
        const NodeId r0 = self( self, lo );
        const NodeId r1 = self( self, hi );
        const NodeId sel = replacement[ v ] != no_node ? replacement[ v ] : var_nodes_[ v ];
        const NodeId r = ite_rec( sel, r1, r0 );
        memo.emplace( n, r );
        return r;
    };
    return wrap( rec( rec, f.id() ) );
}

Bdd Manager::restrict( const Bdd& f, const Bdd& care )
{
    check( f );
    check( care );
    maybe_collect();
    return wrap( restrict_rec( f.id(), care.id() ) );
}

Bdd Manager::cofactor( const Bdd& f, Var v, bool value )
{
    return compose( f, { { v, constant( value ) } } );
}

std::vector< Var > Manager::support( const Bdd& f )
{
    check( f );
    std::unordered_set< NodeId > seen;
    std::vector< bool > present( var_count_, false );
    std::vector< NodeId > stack{ f.id() };
    while ( !stack.empty() )
    {
        const NodeId n = stack.back();
        stack.pop_back();
        if ( n <= 1 || !seen.insert( n ).second )
            continue;
        present[ nodes_[ n ].var ] = true;
        stack.push_back( nodes_[ n ].low );
        stack.push_back( nodes_[ n ].high );
    }
    std::vector< Var > out;
    for ( Var v = 0; v < present.size(); ++v )
        if ( present[ v ] )
            out.push_back( v );
    return out;
}

bool Manager::eval( const Bdd& f, const std::vector< bool >& assignment ) const
{
    check( f );
    NodeId n = f.id();
    while ( n > 1 )
    {
        const Node& node = nodes_[ n ];
        if ( node.var >= assignment.size() )
            throw std::out_of_range( "assignment does not cover variable " +
                                     std::to_string( node.var ) );
        n = assignment[ node.var ] ? node.high : node.low;
    }
    return n == 1;
}

std::optional< std::vector< bool > > Manager::pick_one( const Bdd& f ) const
{
    check( f );
    if ( f.is_false() )
        return std::nullopt;
    std::vector< bool > out( var_count_, false );
    NodeId n = f.id();
    while ( n > 1 )
    {
        const Node& node = nodes_[ n ];
        if ( node.low != 0 )
            n = node.low;
        else
        {
            out[ node.var ] = true;
            n = node.high;
        }
    }
    return out;
}

std::size_t Manager::dag_size( const Bdd& f ) const
{
    return dag_size( std::span< const Bdd >( &f, 1 ) );
}

std::size_t Manager::dag_size( std::span< const Bdd > fs ) const
{
    std::unordered_set< NodeId > seen;
    std::vector< NodeId > stack;
    for ( const Bdd& f : fs )
    {
        check( f );
        stack.push_back( f.id() );
    }
    while ( !stack.empty() )
    {
        const NodeId n = stack.back();
        stack.pop_back();
        if ( n <= 1 || !seen.insert( n ).second )
            continue;
        stack.push_back( nodes_[ n ].low );
        stack.push_back( nodes_[ n ].high );
    }
    return seen.size();
}

std::string Manager::to_dot( const Bdd& f, const std::function< std::string( Var ) >& var_name ) const
{
    check( f );
    std::ostringstream out;
    out << "digraph bdd {\n";
    out << "  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
    std::unordered_set< NodeId > seen;
    std::vector< NodeId > stack{ f.id() };
    while ( !stack.empty() )
    {
        const NodeId n = stack.back();
        stack.pop_back();
        if ( n <= 1 || !seen.insert( n ).second )
            continue;
        const Node& node = nodes_[ n ];
        const std::string label = var_name ? var_name( node.var ) : "x" + std::to_string( node.var );
        out << "  n" << n << " [shape=ellipse,label=\"" << label << "\"];\n";
        out << "  n" << n << " -> n" << node.high << " [style=solid];\n";
        out << "  n" << n << " -> n" << node.low << " [style=dashed];\n";
        stack.push_back( node.low );
        stack.push_back( node.high );
    }
    out << "}\n";
    return out.str();
}

} // namespace safesynth::bdd
