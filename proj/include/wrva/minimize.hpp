// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"
#include "emptiness.hpp"
#include "operations.hpp"
#include "scc.hpp"

#include <cassert>
#include <unordered_map>
#include <vector>

namespace wrva
{

/// L(a from p) == L(a from q), via emptiness of the symmetric difference.
inline bool states_equivalent( const buchi_automaton& a, state_id p, state_id q )
{
    require_deterministic_complete( a, "states_equivalent" );
    require_weak( a, "states_equivalent" );
    if ( p == q )
        return true;
    auto from_p = reroot( a, p );
    auto from_q = reroot( a, q );
    return is_empty( product( from_p, complement_weak( from_q ), product_mode::intersect ) ) &&
           is_empty( product( complement_weak( from_p ), from_q, product_mode::intersect ) );
}

namespace detail
{

// Maximal weak parity colouring: components bottom-up, a transient component
// takes the least colour of its successors, a cyclic one the largest value not
// above that with parity matching its status (even = accepting). Colours never
// decrease along edges, and language-equivalent states get equal colours.
inline std::vector< std::uint32_t > normal_colouring( const scc_decomposition& scc, std::size_t num_states )
{
    const auto count = static_cast< std::uint32_t >( scc.components.size() );
    const std::uint32_t top = 2 * count + 1;
    std::vector< std::uint32_t > colour_of( count, top );
    for ( std::uint32_t c = 0; c < count; ++c )
    {
        const auto& info = scc.components[ c ];
        std::uint32_t bound = top;
        for ( auto d : info.successors )
            bound = std::min( bound, colour_of[ d ] );
        if ( info.has_cycle )
        {
            std::uint32_t parity = info.status == cycle_status::accepting_cycles_only ? 0 : 1;
            if ( bound % 2 != parity )
                --bound;
        }
        colour_of[ c ] = bound;
    }
    std::vector< std::uint32_t > colour( num_states, top );
    for ( state_id q = 0; q < num_states; ++q )
        if ( scc.reachable( q ) )
            colour[ q ] = colour_of[ scc.component[ q ] ];
    return colour;
}

struct signature_hash
{
    std::size_t operator()( const std::vector< std::uint32_t >& v ) const noexcept
    {
        std::size_t h = v.size();
        for ( auto x : v )
            h ^= x + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
        return h;
    }
};

// Coarsest congruence refining `initial` (Moore). Class ids are dense.
inline std::vector< std::uint32_t > moore_partition( const buchi_automaton& a, std::vector< std::uint32_t > cls )
{
    const std::size_t n = a.num_states();
    const std::uint32_t k = a.sigma().size();
    std::size_t classes = 0;
    std::vector< std::uint32_t > sig;
    while ( true )
    {
        std::unordered_map< std::vector< std::uint32_t >, std::uint32_t, signature_hash > signature;
        std::vector< std::uint32_t > next( n );
        for ( state_id q = 0; q < n; ++q )
        {
            sig.clear();
            sig.push_back( cls[ q ] );
            for ( const auto& t : a.transitions( q ) )
                sig.push_back( cls[ t.target ] );
            assert( sig.size() == k + 1 );
            auto [ it, fresh ] = signature.try_emplace( sig, static_cast< std::uint32_t >( signature.size() ) );
            next[ q ] = it->second;
        }
        cls = std::move( next );
        if ( signature.size() == classes )
            break;
        classes = signature.size();
    }
    return cls;
}

// Deterministic quotient by a congruence; class status from `status_of(class)`.
template < typename Status >
buchi_automaton quotient( const buchi_automaton& a, const std::vector< std::uint32_t >& cls, Status&& status_of )
{
    std::uint32_t count = 0;
    for ( auto c : cls )
        count = std::max( count, c + 1 );
    std::vector< state_id > rep( count, a.num_states() );
    for ( state_id q = a.num_states(); q-- > 0; )
        rep[ cls[ q ] ] = q;
    buchi_automaton out( a.sigma() );
    for ( std::uint32_t c = 0; c < count; ++c )
        out.add_state( status_of( rep[ c ] ) );
    out.set_initial( cls[ a.initial() ] );
    for ( std::uint32_t c = 0; c < count; ++c )
        for ( const auto& t : a.transitions( rep[ c ] ) )
            out.add_transition( c, t.label, cls[ t.target ] );
    return out;
}

} // namespace detail

/// Canonical minimal deterministic weak automaton. Reachable states are
/// quotiented by language equivalence, computed as the Moore congruence of a
/// normal colouring; transient classes are rejecting. States are numbered in BFS order from the initial state, so two
/// minimized automata of the same language are identical, not only isomorphic.
inline buchi_automaton minimize_weak( const buchi_automaton& a )
{
    require_deterministic_complete( a, "minimize_weak" );
    require_weak( a, "minimize_weak" );

    buchi_automaton reachable = trim( a );
    auto scc = scc_decompose( reachable );
    auto colour = detail::normal_colouring( scc, reachable.num_states() );
    auto cls = detail::moore_partition( reachable, colour );
    buchi_automaton minimal =
        to_weak( detail::quotient( reachable, cls, [ & ]( state_id q ) { return colour[ q ] % 2 == 0; } ) );
    return trim( minimal );
}

/// Structural isomorphism of the reachable parts of two deterministic
/// complete automata, found by traversing both from their initial states.
inline bool isomorphic( const buchi_automaton& a, const buchi_automaton& b )
{
    require_deterministic_complete( a, "isomorphic" );
    require_deterministic_complete( b, "isomorphic" );
    if ( a.sigma() != b.sigma() )
        return false;
    constexpr state_id unset = ~state_id{ 0 };
    std::vector< state_id > fwd( a.num_states(), unset ), bwd( b.num_states(), unset );
    std::vector< std::pair< state_id, state_id > > work{ { a.initial(), b.initial() } };
    fwd[ a.initial() ] = b.initial();
    bwd[ b.initial() ] = a.initial();
    for ( std::size_t i = 0; i < work.size(); ++i )
    {
        auto [ p, q ] = work[ i ];
        if ( a.is_accepting( p ) != b.is_accepting( q ) )
            return false;
        for ( std::uint32_t s = 0; s < a.sigma().size(); ++s )
        {
            state_id p2 = *a.step( p, symbol{ s } ), q2 = *b.step( q, symbol{ s } );
            if ( fwd[ p2 ] == unset && bwd[ q2 ] == unset )
            {
                fwd[ p2 ] = q2;
                bwd[ q2 ] = p2;
                work.emplace_back( p2, q2 );
            }
            else if ( fwd[ p2 ] != q2 || bwd[ q2 ] != p2 )
                return false;
        }
    }
    return true;
}

} // namespace wrva
