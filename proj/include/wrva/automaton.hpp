// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"
#include "symbol.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wrva
{

using state_id = std::uint32_t;

struct transition
{
    symbol label;
    state_id target;

    friend constexpr auto operator<=>( const transition&, const transition& ) = default;
};

/// Finite-state Büchi automaton over an interned digit-vector alphabet.
///
/// Transitions of each state are kept sorted by (symbol, target), which makes
/// the per-state edge list a sparse map from symbols to successor sets. The
/// acceptance condition is a plain set of states; weakness is a property that
/// is checked on demand (see scc.hpp), never assumed.
class buchi_automaton
{
public:
    buchi_automaton() = default;

    explicit buchi_automaton( alphabet sigma ) : _sigma{ sigma } {}

    const alphabet& sigma() const noexcept { return _sigma; }
    unsigned base() const noexcept { return _sigma.base(); }
    unsigned arity() const noexcept { return _sigma.arity(); }

    std::size_t num_states() const noexcept { return _edges.size(); }
    state_id initial() const noexcept { return _initial; }

    state_id add_state( bool accepting = false )
    {
        _edges.emplace_back();
        _accepting.push_back( accepting );
        return static_cast< state_id >( _edges.size() - 1 );
    }

    void set_initial( state_id q )
    {
        check_state( q );
        _initial = q;
    }

    bool is_accepting( state_id q ) const { return _accepting[ q ]; }

    void set_accepting( state_id q, bool accepting = true )
    {
        check_state( q );
        _accepting[ q ] = accepting;
    }

    /// Sorted list of accepting states.
    std::vector< state_id > accepting_states() const
    {
        std::vector< state_id > out;
        for ( state_id q = 0; q < num_states(); ++q )
            if ( _accepting[ q ] )
                out.push_back( q );
        return out;
    }

    void add_transition( state_id from, symbol label, state_id to )
    {
        check_state( from );
        check_state( to );
        if ( !_sigma.contains( label ) )
            throw symbol_mismatch( "symbol id " + std::to_string( label.id ) + " outside alphabet" );
        auto& out = _edges[ from ];
        transition t{ label, to };
        if ( out.empty() || out.back() < t )
        {
            out.push_back( t );
            return;
        }
        auto it = std::lower_bound( out.begin(), out.end(), t );
        if ( it == out.end() || *it != t )
            out.insert( it, t );
    }

    std::span< const transition > transitions( state_id q ) const { return _edges[ q ]; }

    /// Transitions of q labelled with s.
    std::span< const transition > successors( state_id q, symbol s ) const
    {
        const auto& out = _edges[ q ];
        auto lo = std::lower_bound( out.begin(), out.end(), transition{ s, 0 } );
        auto hi = lo;
        while ( hi != out.end() && hi->label == s )
            ++hi;
        return { lo, hi };
    }

    /// The unique successor in a deterministic automaton.
    std::optional< state_id > step( state_id q, symbol s ) const
    {
        auto succ = successors( q, s );
        if ( succ.empty() )
            return std::nullopt;
        return succ.front().target;
    }

    std::size_t num_transitions() const
    {
        std::size_t n = 0;
        for ( const auto& out : _edges )
            n += out.size();
        return n;
    }

    bool is_deterministic() const
    {
        for ( const auto& out : _edges )
            for ( std::size_t i = 1; i < out.size(); ++i )
                if ( out[ i ].label == out[ i - 1 ].label )
                    return false;
        return true;
    }

    bool is_complete() const
    {
        for ( const auto& out : _edges )
        {
            std::uint32_t expected = 0;
            for ( const auto& t : out )
            {
                if ( t.label.id > expected )
                    return false;
                expected = t.label.id + 1;
            }
            if ( expected != _sigma.size() )
                return false;
        }
        return true;
    }

private:
    void check_state( state_id q ) const
    {
        if ( q >= _edges.size() )
            throw index_out_of_range( "state " + std::to_string( q ) + " does not exist" );
    }

    alphabet _sigma;
    state_id _initial = 0;
    std::vector< std::vector< transition > > _edges;
    std::vector< bool > _accepting;
};

/// Ultimately periodic word prefix · period^ω.
struct lasso_word
{
    std::vector< symbol > prefix;
    std::vector< symbol > period;

    friend bool operator==( const lasso_word&, const lasso_word& ) = default;
};

/// The set of states reachable from the initial state, as a membership mask.
inline std::vector< bool > reachable_states( const buchi_automaton& a )
{
    std::vector< bool > seen( a.num_states(), false );
    if ( a.num_states() == 0 )
        return seen;
    std::vector< state_id > stack{ a.initial() };
    seen[ a.initial() ] = true;
    while ( !stack.empty() )
    {
        state_id q = stack.back();
        stack.pop_back();
        for ( const auto& t : a.transitions( q ) )
            if ( !seen[ t.target ] )
            {
                seen[ t.target ] = true;
                stack.push_back( t.target );
            }
    }
    return seen;
}

/// Copy of a restricted to its reachable part, states renumbered in BFS order
/// from the initial state (edges visited in symbol order).
inline buchi_automaton trim( const buchi_automaton& a )
{
    buchi_automaton out( a.sigma() );
    if ( a.num_states() == 0 )
        return out;
    constexpr state_id unset = ~state_id{ 0 };
    std::vector< state_id > renamed( a.num_states(), unset );
    std::vector< state_id > order{ a.initial() };
    renamed[ a.initial() ] = 0;
    for ( std::size_t i = 0; i < order.size(); ++i )
        for ( const auto& t : a.transitions( order[ i ] ) )
            if ( renamed[ t.target ] == unset )
            {
                renamed[ t.target ] = static_cast< state_id >( order.size() );
                order.push_back( t.target );
            }
    for ( state_id q : order )
        out.add_state( a.is_accepting( q ) );
    out.set_initial( 0 );
    for ( state_id i = 0; i < order.size(); ++i )
        for ( const auto& t : a.transitions( order[ i ] ) )
            out.add_transition( i, t.label, renamed[ t.target ] );
    return out;
}

/// Same automaton with a different initial state.
inline buchi_automaton reroot( const buchi_automaton& a, state_id q )
{
    buchi_automaton out = a;
    out.set_initial( q );
    return out;
}

} // namespace wrva
