// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"
#include "scc.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wrva
{

namespace detail
{

// BFS tree from `from`, edges in symbol order. parent[q] = (predecessor, label).
struct bfs_tree
{
    static constexpr state_id none = ~state_id{ 0 };
    std::vector< state_id > order;
    std::vector< std::pair< state_id, symbol > > parent;
    std::vector< bool > seen;

    std::vector< symbol > path_to( state_id q, state_id root ) const
    {
        std::vector< symbol > word;
        while ( q != root )
        {
            word.push_back( parent[ q ].second );
            q = parent[ q ].first;
        }
        std::reverse( word.begin(), word.end() );
        return word;
    }
};

inline bfs_tree bfs( const buchi_automaton& a, state_id from )
{
    bfs_tree t;
    t.parent.assign( a.num_states(), { bfs_tree::none, symbol{} } );
    t.seen.assign( a.num_states(), false );
    t.order.push_back( from );
    t.seen[ from ] = true;
    for ( std::size_t i = 0; i < t.order.size(); ++i )
        for ( const auto& e : a.transitions( t.order[ i ] ) )
            if ( !t.seen[ e.target ] )
            {
                t.seen[ e.target ] = true;
                t.parent[ e.target ] = { t.order[ i ], e.label };
                t.order.push_back( e.target );
            }
    return t;
}

// Shortest nonempty word leading from q back to q, if any.
inline std::optional< std::vector< symbol > > shortest_cycle( const buchi_automaton& a, state_id q )
{
    std::vector< std::pair< state_id, symbol > > parent( a.num_states(), { bfs_tree::none, symbol{} } );
    std::vector< bool > seen( a.num_states(), false );
    std::vector< state_id > queue;
    for ( const auto& e : a.transitions( q ) )
    {
        if ( e.target == q )
            return std::vector< symbol >{ e.label };
        if ( !seen[ e.target ] )
        {
            seen[ e.target ] = true;
            parent[ e.target ] = { q, e.label };
            queue.push_back( e.target );
        }
    }
    for ( std::size_t i = 0; i < queue.size(); ++i )
    {
        state_id p = queue[ i ];
        for ( const auto& e : a.transitions( p ) )
        {
            if ( e.target == q )
            {
                std::vector< symbol > word{ e.label };
                for ( state_id s = p; s != q; s = parent[ s ].first )
                    word.push_back( parent[ s ].second );
                std::reverse( word.begin(), word.end() );
                return word;
            }
            if ( !seen[ e.target ] )
            {
                seen[ e.target ] = true;
                parent[ e.target ] = { p, e.label };
                queue.push_back( e.target );
            }
        }
    }
    return std::nullopt;
}

inline void check_lasso( const buchi_automaton& a, const lasso_word& w )
{
    if ( w.period.empty() )
        throw precondition_violated( "lasso period must be nonempty" );
    for ( const auto* part : { &w.prefix, &w.period } )
        for ( symbol s : *part )
            if ( !a.sigma().contains( s ) )
                throw symbol_mismatch( "lasso symbol " + std::to_string( s.id ) + " outside alphabet of base " +
                                       std::to_string( a.base() ) + ", arity " + std::to_string( a.arity() ) );
}

} // namespace detail

/// Shortest-prefix lasso accepted by a, or nothing when L(a) is empty. The
/// loop returns to an accepting state, so the lasso is accepted whatever the
/// shape of the acceptance condition.
inline std::optional< lasso_word > find_lasso( const buchi_automaton& a )
{
    if ( a.num_states() == 0 )
        return std::nullopt;
    auto scc = scc_decompose( a );
    auto tree = detail::bfs( a, a.initial() );
    for ( state_id q : tree.order )
    {
        if ( !a.is_accepting( q ) || !scc.on_cycle( q ) )
            continue;
        auto loop = detail::shortest_cycle( a, q );
        return lasso_word{ tree.path_to( q, a.initial() ), std::move( *loop ) };
    }
    return std::nullopt;
}

inline bool is_empty( const buchi_automaton& a )
{
    if ( a.num_states() == 0 )
        return true;
    auto scc = scc_decompose( a );
    for ( state_id q = 0; q < a.num_states(); ++q )
        if ( a.is_accepting( q ) && scc.on_cycle( q ) )
            return false;
    return true;
}

/// Membership of u·v^ω. Deterministic automata are simulated directly;
/// otherwise the automaton is synchronised with the lasso and checked for
/// emptiness.
inline bool accepts_lasso( const buchi_automaton& a, const lasso_word& w )
{
    detail::check_lasso( a, w );
    if ( a.num_states() == 0 )
        return false;

    if ( a.is_deterministic() )
    {
        state_id q = a.initial();
        for ( symbol s : w.prefix )
        {
            auto next = a.step( q, s );
            if ( !next )
                return false;
            q = *next;
        }
        std::map< state_id, std::size_t > boundary;
        std::vector< bool > period_hits_f;
        while ( !boundary.contains( q ) )
        {
            boundary.emplace( q, period_hits_f.size() );
            bool hit = false;
            for ( symbol s : w.period )
            {
                auto next = a.step( q, s );
                if ( !next )
                    return false;
                q = *next;
                hit = hit || a.is_accepting( q );
            }
            period_hits_f.push_back( hit );
        }
        return std::any_of( period_hits_f.begin() + static_cast< std::ptrdiff_t >( boundary[ q ] ),
                            period_hits_f.end(), []( bool b ) { return b; } );
    }

    // Positions 0..|u|-1 walk the prefix, the rest loop over the period.
    const std::size_t len = w.prefix.size() + w.period.size();
    auto letter = [ & ]( std::size_t pos ) {
        return pos < w.prefix.size() ? w.prefix[ pos ] : w.period[ pos - w.prefix.size() ];
    };
    auto next_pos = [ & ]( std::size_t pos ) { return pos + 1 < len ? pos + 1 : w.prefix.size(); };

    buchi_automaton sync( a.sigma() );
    std::map< std::pair< state_id, std::size_t >, state_id > index;
    std::vector< std::pair< state_id, std::size_t > > work;
    auto intern = [ & ]( state_id q, std::size_t pos ) {
        auto [ it, fresh ] = index.try_emplace( { q, pos }, static_cast< state_id >( sync.num_states() ) );
        if ( fresh )
        {
            sync.add_state( a.is_accepting( q ) );
            work.emplace_back( q, pos );
        }
        return it->second;
    };
    sync.set_initial( intern( a.initial(), 0 ) );
    for ( std::size_t i = 0; i < work.size(); ++i )
    {
        auto [ q, pos ] = work[ i ];
        symbol s = letter( pos );
        for ( const auto& e : a.successors( q, s ) )
            sync.add_transition( static_cast< state_id >( i ), s, intern( e.target, next_pos( pos ) ) );
    }
    return !is_empty( sync );
}

} // namespace wrva
