// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"
#include "operations.hpp"
#include "scc.hpp"

#include <cassert>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wrva
{

/// One reachable state (S, R) of a breakpoint determinization, R ⊆ S.
struct breakpoint_pair
{
    std::vector< state_id > subset;  // S
    std::vector< state_id > tracked; // R
};

/// What the pipeline saw at one determinization step.
struct determinization_record
{
    std::size_t input_states = 0;
    std::size_t pair_states = 0;
    /// Every reachable pair satisfied R ⊆ S.
    bool subset_invariant = true;
    /// The deterministic automaton with the breakpoints as Büchi set (it
    /// recognises the complement language) is inherently weak.
    bool inherently_weak = true;
    /// Same check with the non-breakpoint states as Büchi set.
    bool nonbreakpoint_view_inherently_weak = true;
};

/// Collects determinization records from compile/project calls. Passed
/// explicitly; the library keeps no global state.
struct pipeline_observer
{
    std::vector< determinization_record > determinizations;
};

namespace detail
{

struct key_hash
{
    std::size_t operator()( const std::vector< std::uint32_t >& key ) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for ( std::uint32_t v : key )
        {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast< std::size_t >( h ^ ( h >> 29 ) );
    }
};

// Pair-state key: members of S in increasing order, each shifted left by one
// with the low bit tagging membership in R.
inline breakpoint_pair decode_pair( const std::vector< std::uint32_t >& key )
{
    breakpoint_pair p;
    for ( std::uint32_t v : key )
    {
        p.subset.push_back( v >> 1 );
        if ( v & 1 )
            p.tracked.push_back( v >> 1 );
    }
    return p;
}

inline bool subset_of( const std::vector< state_id >& r, const std::vector< state_id >& s )
{
    std::size_t j = 0;
    for ( state_id q : r )
    {
        while ( j < s.size() && s[ j ] < q )
            ++j;
        if ( j == s.size() || s[ j ] != q )
            return false;
    }
    return true;
}

} // namespace detail

struct determinize_options
{
    /// Abort with state_limit_exceeded beyond this many pair-states (0 = no limit).
    std::size_t max_states = 0;
    /// When set, receives every reachable (S, R) pair in state order.
    std::vector< breakpoint_pair >* pairs = nullptr;
};

/// Breakpoint construction for a weak automaton read as co-Büchi with
/// rejection set Q∖F. From (S, R) on σ: T = δ(S, σ); if R = ∅ the new R is
/// T ∩ F, otherwise δ(R, σ) ∩ F. States with R = ∅ are the breakpoints; the
/// result marks the non-breakpoint states accepting. The result is
/// deterministic and complete; only reachable pairs are built.
inline buchi_automaton breakpoint_determinize( const buchi_automaton& a, const determinize_options& opts = {} )
{
    if ( a.num_states() == 0 )
        throw precondition_violated( "breakpoint_determinize: automaton has no states" );
    if ( !is_weak( a ) )
        throw precondition_violated( "breakpoint_determinize: automaton is not weak" );

    const std::uint32_t k = a.sigma().size();
    buchi_automaton out( a.sigma() );
    std::unordered_map< std::vector< std::uint32_t >, state_id, detail::key_hash > index;
    std::vector< std::vector< std::uint32_t > > work;

    auto intern = [ & ]( std::vector< std::uint32_t >&& key ) {
        auto it = index.find( key );
        if ( it != index.end() )
            return it->second;
        if ( opts.max_states && out.num_states() >= opts.max_states )
            throw state_limit_exceeded( "breakpoint determinization exceeded " + std::to_string( opts.max_states ) +
                                        " pair-states" );
        bool has_tracked = false;
        for ( std::uint32_t v : key )
            has_tracked = has_tracked || ( v & 1 );
        state_id id = out.add_state( has_tracked );
        index.emplace( key, id );
        work.push_back( std::move( key ) );
        return id;
    };

    out.set_initial( intern( { a.initial() << 1 } ) );

    std::vector< std::vector< std::uint32_t > > bucket( k );
    std::vector< std::uint32_t > touched;
    for ( std::size_t i = 0; i < work.size(); ++i )
    {
        const std::vector< std::uint32_t > current = work[ i ];
        bool breakpoint = true;
        for ( std::uint32_t v : current )
            breakpoint = breakpoint && !( v & 1 );

        touched.clear();
        for ( std::uint32_t v : current )
        {
            state_id p = v >> 1;
            bool from_tracked = v & 1;
            for ( const auto& e : a.transitions( p ) )
            {
                bool tag = a.is_accepting( e.target ) && ( breakpoint || from_tracked );
                auto& b = bucket[ e.label.id ];
                if ( b.empty() )
                    touched.push_back( e.label.id );
                b.push_back( ( e.target << 1 ) | ( tag ? 1u : 0u ) );
            }
        }

        std::vector< state_id > targets( k, 0 );
        std::vector< bool > filled( k, false );
        for ( std::uint32_t s : touched )
        {
            auto& b = bucket[ s ];
            std::sort( b.begin(), b.end() );
            // Keep one entry per state, tagged if any copy is tagged.
            std::vector< std::uint32_t > key;
            for ( std::uint32_t v : b )
            {
                if ( !key.empty() && ( key.back() >> 1 ) == ( v >> 1 ) )
                    key.back() |= v;
                else
                    key.push_back( v );
            }
            b.clear();
            targets[ s ] = intern( std::move( key ) );
            filled[ s ] = true;
        }
        state_id empty = 0;
        bool have_empty = false;
        for ( std::uint32_t s = 0; s < k; ++s )
        {
            if ( !filled[ s ] )
            {
                if ( !have_empty )
                {
                    empty = intern( {} );
                    have_empty = true;
                }
                targets[ s ] = empty;
            }
            out.add_transition( static_cast< state_id >( i ), symbol{ s }, targets[ s ] );
        }
    }

    if ( opts.pairs )
    {
        opts.pairs->clear();
        for ( const auto& key : work )
            opts.pairs->push_back( detail::decode_pair( key ) );
    }
#ifndef NDEBUG
    for ( const auto& key : work )
    {
        auto p = detail::decode_pair( key );
        assert( detail::subset_of( p.tracked, p.subset ) );
    }
#endif
    return out;
}

/// Determinizes a weak automaton into a deterministic complete weak one with
/// the same language. The breakpoint view of the determinized automaton must
/// be inherently weak; anything else is reported as not_inherently_weak.
inline buchi_automaton determinize_weak( const buchi_automaton& a, pipeline_observer* observer = nullptr,
                                         std::size_t max_states = 0 )
{
    std::vector< breakpoint_pair > pairs;
    determinize_options opts{ max_states, observer ? &pairs : nullptr };
    buchi_automaton det = breakpoint_determinize( a, opts );
    buchi_automaton breakpoints_view = flip_acceptance( det );
    const bool weak = is_inherently_weak( breakpoints_view );

    if ( observer )
    {
        determinization_record rec;
        rec.input_states = a.num_states();
        rec.pair_states = det.num_states();
        for ( const auto& p : pairs )
            rec.subset_invariant = rec.subset_invariant && detail::subset_of( p.tracked, p.subset );
        rec.inherently_weak = weak;
        rec.nonbreakpoint_view_inherently_weak = is_inherently_weak( det );
        observer->determinizations.push_back( rec );
    }
    if ( !weak )
        throw not_inherently_weak( "determinized automaton with " + std::to_string( det.num_states() ) +
                                   " states is not inherently weak" );
    return flip_acceptance( to_weak( breakpoints_view ) );
}

} // namespace wrva
