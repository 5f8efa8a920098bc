// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace wrva
{

namespace detail
{

inline constexpr std::uint32_t no_component = ~std::uint32_t{ 0 };

// Iterative Tarjan over nodes [0, n) reachable from `roots`. Components are
// numbered in completion order, so every edge leads to a component of equal
// or smaller index. Unvisited nodes keep no_component.
template < typename Successors >
std::vector< std::uint32_t > tarjan( std::size_t n, const std::vector< std::uint32_t >& roots,
                                     Successors&& successors, std::uint32_t* component_count = nullptr )
{
    constexpr std::uint32_t unvisited = ~std::uint32_t{ 0 };
    std::vector< std::uint32_t > index( n, unvisited ), low( n, 0 ), comp( n, no_component );
    std::vector< std::uint32_t > stack;
    std::vector< bool > on_stack( n, false );
    std::uint32_t next_index = 0, next_comp = 0;

    struct frame
    {
        std::uint32_t node;
        std::vector< std::uint32_t > succ;
        std::size_t pos;
    };
    std::vector< frame > call;

    auto open = [ & ]( std::uint32_t v ) {
        index[ v ] = low[ v ] = next_index++;
        stack.push_back( v );
        on_stack[ v ] = true;
        frame f{ v, {}, 0 };
        successors( v, f.succ );
        call.push_back( std::move( f ) );
    };

    for ( std::uint32_t root : roots )
    {
        if ( index[ root ] != unvisited )
            continue;
        open( root );
        while ( !call.empty() )
        {
            frame& f = call.back();
            if ( f.pos < f.succ.size() )
            {
                std::uint32_t w = f.succ[ f.pos++ ];
                if ( index[ w ] == unvisited )
                    open( w );
                else if ( on_stack[ w ] )
                    low[ f.node ] = std::min( low[ f.node ], index[ w ] );
                continue;
            }
            std::uint32_t v = f.node;
            call.pop_back();
            if ( !call.empty() )
                low[ call.back().node ] = std::min( low[ call.back().node ], low[ v ] );
            if ( low[ v ] == index[ v ] )
            {
                std::uint32_t w;
                do
                {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[ w ] = false;
                    comp[ w ] = next_comp;
                } while ( w != v );
                ++next_comp;
            }
        }
    }
    if ( component_count )
        *component_count = next_comp;
    return comp;
}

} // namespace detail

enum class cycle_status
{
    accepting_cycles_only,
    rejecting_cycles_only,
    mixed,
    no_cycle,
};

struct scc_info
{
    bool has_cycle = false;
    bool has_accepting_state = false;
    bool has_nonaccepting_state = false;
    cycle_status status = cycle_status::no_cycle;
    std::vector< state_id > states;
    std::set< std::uint32_t > successors; // other components reachable in one step
};

/// SCCs of the reachable part. component[q] is detail::no_component for
/// unreachable states. Components are in reverse topological order.
struct scc_decomposition
{
    std::vector< std::uint32_t > component;
    std::vector< scc_info > components;

    bool reachable( state_id q ) const { return component[ q ] != detail::no_component; }
    const scc_info& of( state_id q ) const { return components[ component[ q ] ]; }
    /// True when q lies on some cycle of the automaton.
    bool on_cycle( state_id q ) const { return reachable( q ) && of( q ).has_cycle; }
};

inline scc_decomposition scc_decompose( const buchi_automaton& a )
{
    scc_decomposition d;
    const std::size_t n = a.num_states();
    if ( n == 0 )
        return d;

    std::uint32_t count = 0;
    d.component = detail::tarjan(
            n, { a.initial() },
            [ & ]( std::uint32_t q, std::vector< std::uint32_t >& out ) {
                for ( const auto& t : a.transitions( q ) )
                    if ( out.empty() || out.back() != t.target )
                        out.push_back( t.target );
            },
            &count );
    d.components.resize( count );

    for ( state_id q = 0; q < n; ++q )
    {
        std::uint32_t c = d.component[ q ];
        if ( c == detail::no_component )
            continue;
        auto& info = d.components[ c ];
        info.states.push_back( q );
        ( a.is_accepting( q ) ? info.has_accepting_state : info.has_nonaccepting_state ) = true;
        for ( const auto& t : a.transitions( q ) )
        {
            std::uint32_t c2 = d.component[ t.target ];
            if ( c2 == c )
                info.has_cycle = true;
            else
                info.successors.insert( c2 );
        }
    }

    // A rejecting cycle exists iff the non-accepting states of a component
    // induce a cycle on their own.
    std::vector< bool > rejecting_cycle( count, false );
    std::vector< std::uint32_t > roots;
    for ( state_id q = 0; q < n; ++q )
        if ( d.component[ q ] != detail::no_component && !a.is_accepting( q ) )
            roots.push_back( q );
    auto inside = [ & ]( state_id q, state_id r ) {
        return !a.is_accepting( r ) && d.component[ r ] == d.component[ q ];
    };
    std::uint32_t sub_count = 0;
    auto sub = detail::tarjan(
            n, roots,
            [ & ]( std::uint32_t q, std::vector< std::uint32_t >& out ) {
                for ( const auto& t : a.transitions( q ) )
                    if ( inside( q, t.target ) )
                        out.push_back( t.target );
            },
            &sub_count );
    std::vector< std::uint32_t > sub_size( sub_count, 0 );
    for ( state_id q = 0; q < n; ++q )
        if ( sub[ q ] != detail::no_component )
            ++sub_size[ sub[ q ] ];
    for ( state_id q = 0; q < n; ++q )
    {
        if ( sub[ q ] == detail::no_component )
            continue;
        bool cyclic = sub_size[ sub[ q ] ] > 1;
        for ( const auto& t : a.transitions( q ) )
            if ( t.target == q )
                cyclic = true;
        if ( cyclic )
            rejecting_cycle[ d.component[ q ] ] = true;
    }

    for ( std::uint32_t c = 0; c < count; ++c )
    {
        auto& info = d.components[ c ];
        if ( !info.has_cycle )
            info.status = cycle_status::no_cycle;
        else if ( info.has_accepting_state && rejecting_cycle[ c ] )
            info.status = cycle_status::mixed;
        else if ( info.has_accepting_state )
            info.status = cycle_status::accepting_cycles_only;
        else
            info.status = cycle_status::rejecting_cycles_only;
    }
    return d;
}

/// No reachable SCC holds both an accepting and a rejecting cycle.
inline bool is_inherently_weak( const buchi_automaton& a )
{
    for ( const auto& c : scc_decompose( a ).components )
        if ( c.status == cycle_status::mixed )
            return false;
    return true;
}

/// Every reachable SCC is uniformly accepting or uniformly rejecting.
inline bool is_weak( const buchi_automaton& a )
{
    for ( const auto& c : scc_decompose( a ).components )
        if ( c.has_accepting_state && c.has_nonaccepting_state )
            return false;
    return true;
}

} // namespace wrva
