// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles and generators. Nothing here calls the library's
// acceptance, SCC, encoding or compilation algorithms; the oracles work
// from the definitions on the raw automaton data.
#pragma once

#include <wrva/wrva.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace wrva::oracle
{

// ---------------------------------------------------------------------------
// ω-word acceptance: search the graph of (state, position in u·v^ω) for a
// reachable accepting node that lies on a cycle.

inline bool accepts( const buchi_automaton& a, const lasso_word& w )
{
    if ( a.num_states() == 0 )
        return false;
    const std::size_t u = w.prefix.size(), len = u + w.period.size();
    auto sym = [ & ]( std::size_t pos ) { return pos < u ? w.prefix[ pos ] : w.period[ pos - u ]; };
    auto next = [ & ]( std::size_t pos ) { return pos + 1 < len ? pos + 1 : u; };
    auto id = [ & ]( state_id q, std::size_t pos ) { return q * len + pos; };
    const std::size_t n = a.num_states() * len;

    auto successors = [ & ]( std::size_t node ) {
        std::vector< std::size_t > out;
        state_id q = static_cast< state_id >( node / len );
        std::size_t pos = node % len;
        for ( const auto& t : a.transitions( q ) )
            if ( t.label == sym( pos ) )
                out.push_back( id( t.target, next( pos ) ) );
        return out;
    };
    auto reach = [ & ]( std::vector< std::size_t > from ) {
        std::vector< bool > seen( n, false );
        for ( auto f : from )
            seen[ f ] = true;
        while ( !from.empty() )
        {
            auto x = from.back();
            from.pop_back();
            for ( auto y : successors( x ) )
                if ( !seen[ y ] )
                {
                    seen[ y ] = true;
                    from.push_back( y );
                }
        }
        return seen;
    };

    auto live = reach( { id( a.initial(), 0 ) } );
    for ( std::size_t node = 0; node < n; ++node )
    {
        if ( !live[ node ] || node % len < u || !a.is_accepting( static_cast< state_id >( node / len ) ) )
            continue;
        if ( reach( successors( node ) )[ node ] )
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Lasso enumeration and sampling.

inline std::vector< lasso_word > all_lassos( const std::vector< symbol >& symbols, std::size_t max_prefix,
                                             std::size_t max_period )
{
    std::vector< std::vector< symbol > > words{ {} };
    std::vector< std::vector< std::vector< symbol > > > by_length{ { {} } };
    for ( std::size_t l = 1; l <= std::max( max_prefix, max_period ); ++l )
    {
        by_length.emplace_back();
        for ( const auto& w : by_length[ l - 1 ] )
            for ( symbol s : symbols )
            {
                auto x = w;
                x.push_back( s );
                by_length[ l ].push_back( std::move( x ) );
            }
    }
    std::vector< lasso_word > out;
    for ( std::size_t pu = 0; pu <= max_prefix; ++pu )
        for ( std::size_t pv = 1; pv <= max_period; ++pv )
            for ( const auto& u : by_length[ pu ] )
                for ( const auto& v : by_length[ pv ] )
                    out.push_back( { u, v } );
    return out;
}

inline lasso_word random_lasso( std::mt19937_64& rng, const alphabet& sigma, std::size_t max_prefix,
                                std::size_t max_period )
{
    std::uniform_int_distribution< std::uint32_t > pick( 0, sigma.size() - 1 );
    std::uniform_int_distribution< std::size_t > lu( 0, max_prefix ), lv( 1, max_period );
    lasso_word w;
    for ( std::size_t i = lu( rng ); i > 0; --i )
        w.prefix.push_back( symbol{ pick( rng ) } );
    for ( std::size_t i = lv( rng ); i > 0; --i )
        w.period.push_back( symbol{ pick( rng ) } );
    return w;
}

/// A valid encoding shaped lasso: sign vector, digits, ⋆, digits, periodic digits.
inline lasso_word random_encoding( std::mt19937_64& rng, const alphabet& sigma, std::size_t max_int,
                                   std::size_t max_frac, std::size_t max_period )
{
    std::uniform_int_distribution< std::uint32_t > digit( 0, sigma.digit_vector_count() - 1 );
    auto signs = sigma.sign_vectors();
    std::uniform_int_distribution< std::size_t > sign( 0, signs.size() - 1 ), li( 0, max_int ), lf( 0, max_frac ),
        lp( 1, max_period );
    lasso_word w;
    w.prefix.push_back( signs[ sign( rng ) ] );
    for ( std::size_t i = li( rng ); i > 0; --i )
        w.prefix.push_back( symbol{ digit( rng ) } );
    w.prefix.push_back( sigma.star() );
    for ( std::size_t i = lf( rng ); i > 0; --i )
        w.prefix.push_back( symbol{ digit( rng ) } );
    for ( std::size_t i = lp( rng ); i > 0; --i )
        w.period.push_back( symbol{ digit( rng ) } );
    return w;
}

inline std::vector< symbol > all_symbols( const alphabet& sigma )
{
    std::vector< symbol > out;
    for ( std::uint32_t s = 0; s < sigma.size(); ++s )
        out.push_back( symbol{ s } );
    return out;
}

// ---------------------------------------------------------------------------
// SCC classification by pairwise reachability.

struct scc_facts
{
    std::vector< std::set< state_id > > components; // reachable SCCs
    std::vector< bool > accepting_cycle, rejecting_cycle, cyclic;
};

inline std::vector< bool > reachable_from( const buchi_automaton& a, state_id q,
                                           const std::function< bool( state_id ) >& allowed, bool include_self )
{
    std::vector< bool > seen( a.num_states(), false );
    std::vector< state_id > stack;
    for ( const auto& t : a.transitions( q ) )
        if ( allowed( t.target ) && !seen[ t.target ] )
        {
            seen[ t.target ] = true;
            stack.push_back( t.target );
        }
    while ( !stack.empty() )
    {
        state_id p = stack.back();
        stack.pop_back();
        for ( const auto& t : a.transitions( p ) )
            if ( allowed( t.target ) && !seen[ t.target ] )
            {
                seen[ t.target ] = true;
                stack.push_back( t.target );
            }
    }
    if ( include_self )
        seen[ q ] = true;
    return seen;
}

inline scc_facts classify( const buchi_automaton& a )
{
    scc_facts f;
    if ( a.num_states() == 0 )
        return f;
    auto any = []( state_id ) { return true; };
    const auto n = a.num_states();
    std::vector< std::vector< bool > > reach( n );
    for ( state_id q = 0; q < n; ++q )
        reach[ q ] = reachable_from( a, q, any, true );
    std::vector< bool > assigned( n, false );
    for ( state_id q = 0; q < n; ++q )
    {
        if ( !reach[ a.initial() ][ q ] || assigned[ q ] )
            continue;
        std::set< state_id > comp;
        for ( state_id p = 0; p < n; ++p )
            if ( reach[ q ][ p ] && reach[ p ][ q ] )
            {
                comp.insert( p );
                assigned[ p ] = true;
            }
        bool acc = false, rej = false, cyc = false;
        for ( state_id p : comp )
        {
            bool self = reachable_from( a, p, any, false )[ p ];
            cyc = cyc || self;
            acc = acc || ( self && a.is_accepting( p ) );
            auto inside_rejecting = [ & ]( state_id s ) { return comp.contains( s ) && !a.is_accepting( s ); };
            if ( !a.is_accepting( p ) )
                rej = rej || reachable_from( a, p, inside_rejecting, false )[ p ];
        }
        f.components.push_back( comp );
        f.accepting_cycle.push_back( acc );
        f.rejecting_cycle.push_back( rej );
        f.cyclic.push_back( cyc );
    }
    return f;
}

inline bool inherently_weak( const buchi_automaton& a )
{
    auto f = classify( a );
    for ( std::size_t i = 0; i < f.components.size(); ++i )
        if ( f.accepting_cycle[ i ] && f.rejecting_cycle[ i ] )
            return false;
    return true;
}

/// Every reachable SCC has uniform acceptance.
inline bool weak( const buchi_automaton& a )
{
    for ( const auto& comp : classify( a ).components )
    {
        std::set< bool > statuses;
        for ( state_id q : comp )
            statuses.insert( a.is_accepting( q ) );
        if ( statuses.size() > 1 )
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Numbers.

/// Value of an encoding, computed right to left: the periodic tail first,
/// then the pre-period fractional digits, then the integer digits.
inline std::vector< rational > value( const lasso_word& w, unsigned base, unsigned arity )
{
    alphabet sigma( base, arity );
    std::size_t star = 0;
    while ( !sigma.is_star( w.prefix.at( star ) ) )
        ++star;
    std::vector< rational > out;
    const rational r( base );
    for ( unsigned c = 0; c < arity; ++c )
    {
        // y = 0.(v)^ω satisfies r^L·y = V + y
        rational cycle = 0, scale = 1;
        for ( symbol s : w.period )
        {
            cycle = cycle * r + sigma.digit( s, c );
            scale *= r;
        }
        rational frac = cycle / ( scale - 1 );
        for ( std::size_t i = w.prefix.size(); i-- > star + 1; )
            frac = ( rational( sigma.digit( w.prefix[ i ], c ) ) + frac ) / r;
        rational whole = 0, weight = 1;
        for ( std::size_t i = star; i-- > 1; )
        {
            whole += weight * sigma.digit( w.prefix[ i ], c );
            weight *= r;
        }
        if ( sigma.digit( w.prefix[ 0 ], c ) == base - 1 )
            whole -= weight;
        out.push_back( whole + frac );
    }
    return out;
}

inline bool holds( const linear_atom& atom, const std::vector< rational >& x )
{
    rational lhs = 0;
    for ( std::size_t i = 0; i < x.size(); ++i )
        lhs += rational( atom.coefficients[ i ] ) * x[ i ];
    return atom.rel == relation::eq ? lhs == rational( atom.constant ) : lhs <= rational( atom.constant );
}

// ---------------------------------------------------------------------------
// Generators.

inline std::int64_t uniform( std::mt19937_64& rng, std::int64_t lo, std::int64_t hi )
{
    return std::uniform_int_distribution< std::int64_t >( lo, hi )( rng );
}

inline linear_atom random_atom( std::mt19937_64& rng, unsigned n, std::int64_t max_a, std::int64_t max_c )
{
    linear_atom a;
    for ( unsigned i = 0; i < n; ++i )
        a.coefficients.push_back( uniform( rng, -max_a, max_a ) );
    a.constant = uniform( rng, -max_c, max_c );
    a.rel = uniform( rng, 0, 2 ) == 0 ? relation::eq : relation::leq;
    return a;
}

/// Grid points in [-4, 4] with step 1/r², plus a few non-terminating values.
inline std::vector< rational > random_point( std::mt19937_64& rng, unsigned n, unsigned base )
{
    std::vector< rational > x;
    const std::int64_t den = static_cast< std::int64_t >( base ) * base;
    for ( unsigned i = 0; i < n; ++i )
    {
        if ( uniform( rng, 0, 9 ) == 0 )
            x.emplace_back( uniform( rng, -12, 12 ), 3 + 4 * uniform( rng, 0, 1 ) ); // thirds and sevenths
        else
            x.emplace_back( uniform( rng, -4 * den, 4 * den ), den );
    }
    return x;
}

/// Points that make an atom tight, to exercise boundaries.
inline std::vector< rational > boundary_point( std::mt19937_64& rng, const linear_atom& atom, unsigned base )
{
    auto x = random_point( rng, static_cast< unsigned >( atom.coefficients.size() ), base );
    for ( std::size_t i = 0; i < x.size(); ++i )
        if ( atom.coefficients[ i ] != 0 )
        {
            rational rest = 0;
            for ( std::size_t j = 0; j < x.size(); ++j )
                if ( j != i )
                    rest += rational( atom.coefficients[ j ] ) * x[ j ];
            x[ i ] = ( rational( atom.constant ) - rest ) / rational( atom.coefficients[ i ] );
            break;
        }
    return x;
}

inline formula atom_formula( const linear_atom& a, const std::vector< std::string >& vars )
{
    linear_constraint c;
    for ( std::size_t i = 0; i < vars.size(); ++i )
        if ( a.coefficients[ i ] != 0 )
            c.coefficients[ vars[ i ] ] += a.coefficients[ i ];
    c.bound = a.constant;
    c.rel = a.rel;
    return formula::atom( c );
}

/// Quantifier-free formula of the given depth over `vars`.
inline formula random_qf( std::mt19937_64& rng, const std::vector< std::string >& vars, unsigned depth,
                          std::int64_t max_a = 4, std::int64_t max_c = 8, bool integrality = true )
{
    auto n = static_cast< unsigned >( vars.size() );
    if ( depth == 0 || uniform( rng, 0, 3 ) == 0 )
    {
        if ( integrality && uniform( rng, 0, 7 ) == 0 )
            return formula::integral( vars[ uniform( rng, 0, n - 1 ) ] );
        return atom_formula( random_atom( rng, n, max_a, max_c ), vars );
    }
    switch ( uniform( rng, 0, 2 ) )
    {
    case 0:
        return formula::negation( random_qf( rng, vars, depth - 1, max_a, max_c, integrality ) );
    case 1:
        return formula::conjunction(
            { random_qf( rng, vars, depth - 1, max_a, max_c, integrality ), random_qf( rng, vars, depth - 1, max_a, max_c, integrality ) } );
    default:
        return formula::disjunction(
            { random_qf( rng, vars, depth - 1, max_a, max_c, integrality ), random_qf( rng, vars, depth - 1, max_a, max_c, integrality ) } );
    }
}

/// Direct evaluation of a quantifier-free formula.
inline bool eval_qf( const formula& f, const std::map< std::string, rational >& env )
{
    using k = formula::kind;
    switch ( f.which() )
    {
    case k::truth:
        return f.value();
    case k::atom:
    {
        rational lhs = 0;
        for ( const auto& [ v, c ] : f.constraint().coefficients )
            lhs += rational( c ) * env.at( v );
        return f.constraint().rel == relation::eq ? lhs == f.constraint().bound : lhs <= f.constraint().bound;
    }
    case k::integral:
        return boost::multiprecision::denominator( env.at( f.variable() ) ) == 1;
    case k::negation:
        return !eval_qf( f.body(), env );
    case k::conjunction:
        return std::all_of( f.children().begin(), f.children().end(),
                            [ & ]( const formula& c ) { return eval_qf( c, env ); } );
    case k::disjunction:
        return std::any_of( f.children().begin(), f.children().end(),
                            [ & ]( const formula& c ) { return eval_qf( c, env ); } );
    default:
        throw precondition_violated( "eval_qf on a quantified formula" );
    }
}

inline void collect_atoms( const formula& f, std::vector< linear_constraint >& out )
{
    if ( f.which() == formula::kind::atom )
        out.push_back( f.constraint() );
    for ( const auto& c : f.children() )
        collect_atoms( c, out );
}

// Sorted candidate values that meet every cell of a partition of the line
// cut at `cuts`: the cuts, midpoints, and one point beyond each end.
inline std::vector< rational > cell_samples( std::set< rational > cuts )
{
    if ( cuts.empty() )
        return { rational( 0 ) };
    std::vector< rational > sorted( cuts.begin(), cuts.end() ), out;
    out.push_back( sorted.front() - 1 );
    for ( std::size_t i = 0; i < sorted.size(); ++i )
    {
        out.push_back( sorted[ i ] );
        if ( i + 1 < sorted.size() )
            out.push_back( ( sorted[ i ] + sorted[ i + 1 ] ) / 2 );
    }
    out.push_back( sorted.back() + 1 );
    return out;
}

// Value of `var` where atom `c` is tight, the other variables fixed.
inline std::optional< rational > root( const linear_constraint& c, const std::string& var,
                                       const std::map< std::string, rational >& env )
{
    auto it = c.coefficients.find( var );
    if ( it == c.coefficients.end() )
        return std::nullopt;
    rational rest = c.bound;
    for ( const auto& [ v, a ] : c.coefficients )
        if ( v != var )
            rest -= rational( a ) * env.at( v );
    return rest / rational( it->second );
}

inline bool eval_inner( const formula& f, std::map< std::string, rational > env );

/// Exact truth of Q₁y Q₂z φ or Q₁y φ with real quantifiers and
/// quantifier-free φ at fixed free variables. With φ's atoms cut into
/// pieces by y, the truth of the inner part is constant between the
/// y-values where two z-roots cross or an atom without z is tight.
inline bool eval_real_prenex( const formula& f, std::map< std::string, rational > env )
{
    using k = formula::kind;
    if ( f.which() != k::exists && f.which() != k::forall )
        return eval_qf( f, env );
    const bool outer_exists = f.which() == k::exists;
    const std::string y = f.variable();
    const formula& inner = f.body();
    std::vector< linear_constraint > atoms;
    collect_atoms( inner, atoms );

    std::set< rational > cuts;
    if ( inner.which() == k::exists || inner.which() == k::forall )
    {
        const std::string z = inner.variable();
        // z-roots as affine functions of y: z = p + q·y
        std::vector< std::pair< rational, rational > > lines;
        for ( const auto& c : atoms )
        {
            auto cz = c.coefficients.find( z );
            auto cy = c.coefficients.find( y );
            rational a_y = cy == c.coefficients.end() ? rational( 0 ) : rational( cy->second );
            rational rest = c.bound;
            for ( const auto& [ v, a ] : c.coefficients )
                if ( v != z && v != y )
                    rest -= rational( a ) * env.at( v );
            if ( cz == c.coefficients.end() )
            {
                if ( a_y != 0 )
                    cuts.insert( rest / a_y );
            }
            else
            {
                rational a_z( cz->second );
                lines.emplace_back( rest / a_z, -a_y / a_z );
            }
        }
        for ( std::size_t i = 0; i < lines.size(); ++i )
            for ( std::size_t j = i + 1; j < lines.size(); ++j )
                if ( lines[ i ].second != lines[ j ].second )
                    cuts.insert( ( lines[ j ].first - lines[ i ].first ) / ( lines[ i ].second - lines[ j ].second ) );
    }
    else
    {
        for ( const auto& c : atoms )
            if ( auto r = root( c, y, env ) )
                cuts.insert( *r );
    }

    for ( const auto& value : cell_samples( cuts ) )
    {
        env[ y ] = value;
        bool v = inner.which() == k::exists || inner.which() == k::forall ? eval_inner( inner, env )
                                                                          : eval_qf( inner, env );
        if ( v == outer_exists )
            return outer_exists;
    }
    return !outer_exists;
}

inline bool eval_inner( const formula& f, std::map< std::string, rational > env )
{
    const bool exists = f.which() == formula::kind::exists;
    std::vector< linear_constraint > atoms;
    collect_atoms( f.body(), atoms );
    std::set< rational > cuts;
    for ( const auto& c : atoms )
        if ( auto r = root( c, f.variable(), env ) )
            cuts.insert( *r );
    for ( const auto& value : cell_samples( cuts ) )
    {
        env[ f.variable() ] = value;
        if ( eval_qf( f.body(), env ) == exists )
            return exists;
    }
    return !exists;
}

// ---------------------------------------------------------------------------
// Equivalence-preserving rewrites.

/// De Morgan, double negation and ∀/∃ duality applied throughout.
inline formula rewrite( const formula& f, std::mt19937_64& rng )
{
    using k = formula::kind;
    switch ( f.which() )
    {
    case k::negation:
    {
        const formula& b = f.body();
        if ( b.which() == k::conjunction || b.which() == k::disjunction )
        {
            std::vector< formula > parts;
            for ( const auto& c : b.children() )
                parts.push_back( formula::negation( rewrite( c, rng ) ) );
            return b.which() == k::conjunction ? formula::disjunction( parts ) : formula::conjunction( parts );
        }
        if ( b.which() == k::negation )
            return rewrite( b.body(), rng );
        return formula::negation( rewrite( b, rng ) );
    }
    case k::conjunction:
    case k::disjunction:
    {
        std::vector< formula > parts;
        for ( const auto& c : f.children() )
            parts.push_back( rewrite( c, rng ) );
        std::reverse( parts.begin(), parts.end() );
        return f.which() == k::conjunction ? formula::conjunction( parts ) : formula::disjunction( parts );
    }
    case k::exists:
        return formula::negation(
            formula::forall( f.variable(), f.variable_sort(), formula::negation( rewrite( f.body(), rng ) ) ) );
    case k::forall:
        return formula::negation(
            formula::exists( f.variable(), f.variable_sort(), formula::negation( rewrite( f.body(), rng ) ) ) );
    default:
        return uniform( rng, 0, 1 ) ? formula::negation( formula::negation( f ) ) : f;
    }
}

} // namespace wrva::oracle
