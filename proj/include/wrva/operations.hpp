// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"
#include "scc.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wrva
{

inline void require_deterministic_complete( const buchi_automaton& a, const char* op )
{
    if ( a.num_states() == 0 )
        throw precondition_violated( std::string( op ) + ": automaton has no states" );
    if ( !a.is_deterministic() )
        throw precondition_violated( std::string( op ) + ": automaton is not deterministic" );
    if ( !a.is_complete() )
        throw precondition_violated( std::string( op ) + ": automaton is not complete" );
}

inline void require_weak( const buchi_automaton& a, const char* op )
{
    if ( !is_weak( a ) )
        throw precondition_violated( std::string( op ) + ": automaton is not weak" );
}

/// Recolours every reachable SCC uniformly by the status of its cycles.
/// Cycle-free components and unreachable states become rejecting.
inline buchi_automaton to_weak( const buchi_automaton& a )
{
    auto scc = scc_decompose( a );
    buchi_automaton out = a;
    for ( state_id q = 0; q < a.num_states(); ++q )
    {
        if ( !scc.reachable( q ) )
        {
            out.set_accepting( q, false );
            continue;
        }
        switch ( scc.of( q ).status )
        {
        case cycle_status::mixed:
            throw not_inherently_weak( "SCC of state " + std::to_string( q ) +
                                       " contains both accepting and rejecting cycles" );
        case cycle_status::accepting_cycles_only:
            out.set_accepting( q, true );
            break;
        case cycle_status::rejecting_cycles_only:
        case cycle_status::no_cycle:
            out.set_accepting( q, false );
            break;
        }
    }
    return out;
}

/// Adds one rejecting sink when some (state, symbol) pair has no successor.
inline buchi_automaton make_complete( const buchi_automaton& a )
{
    if ( a.num_states() > 0 && a.is_complete() )
        return a;
    buchi_automaton out = a;
    if ( out.num_states() == 0 )
    {
        out.add_state( false );
        out.set_initial( 0 );
    }
    const auto n = static_cast< state_id >( out.num_states() );
    state_id sink = out.add_state( false );
    for ( state_id q = 0; q <= n; ++q )
    {
        std::vector< symbol > missing;
        for ( std::uint32_t s = 0; s < out.sigma().size(); ++s )
            if ( q == sink || out.successors( q, symbol{ s } ).empty() )
                missing.push_back( symbol{ s } );
        for ( symbol s : missing )
            out.add_transition( q, s, sink );
    }
    return out;
}

enum class product_mode
{
    intersect,
    unite,
};

/// Synchronous product of two deterministic complete weak automata, built on
/// reachable pairs only.
inline buchi_automaton product( const buchi_automaton& a, const buchi_automaton& b, product_mode mode )
{
    if ( a.arity() != b.arity() )
        throw arity_mismatch( "product of arities " + std::to_string( a.arity() ) + " and " +
                              std::to_string( b.arity() ) );
    if ( a.base() != b.base() )
        throw base_mismatch( "product of bases " + std::to_string( a.base() ) + " and " +
                             std::to_string( b.base() ) );
    require_deterministic_complete( a, "product" );
    require_deterministic_complete( b, "product" );
    require_weak( a, "product" );
    require_weak( b, "product" );

    buchi_automaton out( a.sigma() );
    std::map< std::pair< state_id, state_id >, state_id > index;
    std::vector< std::pair< state_id, state_id > > work;
    auto intern = [ & ]( state_id p, state_id q ) {
        auto [ it, fresh ] = index.try_emplace( { p, q }, static_cast< state_id >( out.num_states() ) );
        if ( fresh )
        {
            bool acc = mode == product_mode::intersect ? ( a.is_accepting( p ) && b.is_accepting( q ) )
                                                       : ( a.is_accepting( p ) || b.is_accepting( q ) );
            out.add_state( acc );
            work.emplace_back( p, q );
        }
        return it->second;
    };
    out.set_initial( intern( a.initial(), b.initial() ) );
    for ( std::size_t i = 0; i < work.size(); ++i )
    {
        auto [ p, q ] = work[ i ];
        for ( std::uint32_t s = 0; s < a.sigma().size(); ++s )
        {
            state_id to = intern( *a.step( p, symbol{ s } ), *b.step( q, symbol{ s } ) );
            out.add_transition( static_cast< state_id >( i ), symbol{ s }, to );
        }
    }
    return out;
}

/// Flips acceptance with no preconditions. Only a language complement when
/// the input is deterministic, complete and weak.
inline buchi_automaton flip_acceptance( const buchi_automaton& a )
{
    buchi_automaton out = a;
    for ( state_id q = 0; q < a.num_states(); ++q )
        out.set_accepting( q, !a.is_accepting( q ) );
    return out;
}

/// Flips the status of every state of a deterministic complete weak automaton.
inline buchi_automaton complement_weak( const buchi_automaton& a )
{
    require_deterministic_complete( a, "complement_weak" );
    require_weak( a, "complement_weak" );
    return flip_acceptance( a );
}

} // namespace wrva
