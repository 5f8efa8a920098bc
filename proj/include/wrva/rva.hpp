// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"
#include "determinize.hpp"
#include "emptiness.hpp"
#include "encoding.hpp"
#include "minimize.hpp"
#include "operations.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace wrva
{

/// Real vector automaton: a Büchi automaton accepting, for each vector of a
/// set S ⊆ ℝⁿ, either every base-r encoding of it or none. frame[i] names
/// component i.
struct rva
{
    buchi_automaton automaton;
    std::vector< std::string > frame;

    unsigned base() const noexcept { return automaton.base(); }
    unsigned arity() const noexcept { return automaton.arity(); }
};

enum class relation
{
    eq,
    leq,
};

/// a·x = c or a·x ≤ c over integer coefficients.
struct linear_atom
{
    std::vector< std::int64_t > coefficients;
    std::int64_t constant = 0;
    relation rel = relation::leq;
};

/// x0, x1, ... for callers that do not care about names.
inline std::vector< std::string > default_frame( unsigned arity )
{
    std::vector< std::string > out;
    for ( unsigned i = 0; i < arity; ++i )
        out.push_back( "x" + std::to_string( i ) );
    return out;
}

namespace detail
{

inline void check_frame( const std::vector< std::string >& frame, unsigned arity )
{
    if ( frame.size() != arity )
        throw arity_mismatch( "frame has " + std::to_string( frame.size() ) + " names for arity " +
                              std::to_string( arity ) );
}

inline void check_compatible( const rva& a, const rva& b )
{
    if ( a.base() != b.base() )
        throw base_mismatch( "RVAs in bases " + std::to_string( a.base() ) + " and " + std::to_string( b.base() ) );
    if ( a.frame != b.frame )
        throw frame_mismatch( "RVAs over different variable frames" );
}

} // namespace detail

/// V: a sign vector, digit vectors, one separator, digit vectors forever.
/// States: 0 before the sign, 1 integer part, 2 fractional part, 3 sink.
inline buchi_automaton valid_encoding_language( unsigned arity, unsigned base )
{
    alphabet sigma( base, arity );
    buchi_automaton a( sigma );
    state_id start = a.add_state(), whole = a.add_state(), frac = a.add_state( true ), sink = a.add_state();
    a.set_initial( start );
    for ( std::uint32_t id = 0; id < sigma.digit_vector_count(); ++id )
    {
        symbol s{ id };
        a.add_transition( start, s, sigma.is_sign_vector( s ) ? whole : sink );
        a.add_transition( whole, s, whole );
        a.add_transition( frac, s, frac );
        a.add_transition( sink, s, sink );
    }
    a.add_transition( start, sigma.star(), sink );
    a.add_transition( whole, sigma.star(), frac );
    a.add_transition( frac, sigma.star(), sink );
    a.add_transition( sink, sigma.star(), sink );
    return a;
}

inline rva valid_encoding_automaton( const std::vector< std::string >& frame, unsigned base )
{
    auto n = static_cast< unsigned >( frame.size() );
    return { minimize_weak( valid_encoding_language( n, base ) ), frame };
}

inline rva valid_encoding_automaton( unsigned arity, unsigned base )
{
    return valid_encoding_automaton( default_frame( arity ), base );
}

/// The empty set over a frame.
inline rva empty_rva( const std::vector< std::string >& frame, unsigned base )
{
    buchi_automaton a( alphabet( base, static_cast< unsigned >( frame.size() ) ) );
    state_id q = a.add_state();
    a.set_initial( q );
    for ( std::uint32_t s = 0; s < a.sigma().size(); ++s )
        a.add_transition( q, symbol{ s }, q );
    return { a, frame };
}

/// Deterministic automaton of all encodings of {x : a·x ~ c}, before
/// minimization.
///
/// Before the separator the automaton tracks γ = a·(integer part read so
/// far): a sign vector s starts at γ = -Σ{a_i : s_i = r-1} and each digit
/// vector d maps γ to r·γ + a·d. Outside [min(0,c) - ‖a‖₁ - r - slack,
/// max(0,c) + ‖a‖₁ + r + slack] γ only moves away from the window, so such
/// values collapse into a persistent TOP (too large: no fraction can
/// compensate) or BOTTOM (too small: every fraction satisfies ≤, none
/// satisfies =) state.
///
/// On the separator the residual β = c - γ is the value a·f the fractional
/// part f must reach. Each fractional digit vector d maps β to r·β - a·d,
/// and a·f ranges over [α⁻, α⁺] (sums of the negative / positive
/// coefficients). For ≤, β ≥ α⁺ is settled true and β < α⁻ settled false;
/// for =, β must stay within [α⁻, α⁺] forever. The live fractional states
/// are accepting, everything before the separator is not.
inline buchi_automaton build_atom_automaton( const linear_atom& atom, unsigned base, std::int64_t slack = 0 )
{
    const auto n = static_cast< unsigned >( atom.coefficients.size() );
    alphabet sigma( base, n );
    const auto& a = atom.coefficients;
    const std::int64_t c = atom.constant, r = base;
    std::int64_t neg = 0, pos = 0;
    for ( auto v : a )
        ( v < 0 ? neg : pos ) += v;
    const std::int64_t norm = pos - neg;
    const std::int64_t lo = std::min< std::int64_t >( 0, c ) - norm - r - slack;
    const std::int64_t hi = std::max< std::int64_t >( 0, c ) + norm + r + slack;
    const bool leq = atom.rel == relation::leq;

    const std::uint32_t k = sigma.digit_vector_count();
    std::vector< std::int64_t > dot( k );
    std::vector< std::int64_t > sign_start( k, 0 );
    for ( std::uint32_t id = 0; id < k; ++id )
    {
        auto d = sigma.digits( symbol{ id } );
        for ( unsigned i = 0; i < n; ++i )
        {
            dot[ id ] += a[ i ] * static_cast< std::int64_t >( d[ i ] );
            if ( d[ i ] == base - 1 )
                sign_start[ id ] -= a[ i ];
        }
    }

    buchi_automaton out( sigma );
    const state_id start = out.add_state();
    const state_id sink = out.add_state();
    const state_id top = out.add_state();
    const state_id bottom = out.add_state();
    const state_id always = out.add_state( true );
    out.set_initial( start );

    std::map< std::int64_t, state_id > int_states, frac_states;
    std::vector< std::pair< state_id, std::int64_t > > int_work, frac_work;

    auto int_state = [ & ]( std::int64_t gamma ) {
        if ( gamma > hi )
            return top;
        if ( gamma < lo )
            return bottom;
        auto [ it, fresh ] = int_states.try_emplace( gamma, 0 );
        if ( fresh )
        {
            it->second = out.add_state();
            int_work.emplace_back( it->second, gamma );
        }
        return it->second;
    };
    auto frac_state = [ & ]( std::int64_t beta ) {
        if ( beta < neg )
            return sink;
        if ( leq && beta >= pos )
            return always;
        if ( !leq && beta > pos )
            return sink;
        auto [ it, fresh ] = frac_states.try_emplace( beta, 0 );
        if ( fresh )
        {
            it->second = out.add_state( true );
            frac_work.emplace_back( it->second, beta );
        }
        return it->second;
    };

    for ( std::uint32_t id = 0; id < k; ++id )
        out.add_transition( start, symbol{ id },
                            sigma.is_sign_vector( symbol{ id } ) ? int_state( sign_start[ id ] ) : sink );
    out.add_transition( start, sigma.star(), sink );

    for ( std::size_t i = 0; i < int_work.size(); ++i )
    {
        auto [ q, gamma ] = int_work[ i ];
        for ( std::uint32_t id = 0; id < k; ++id )
            out.add_transition( q, symbol{ id }, int_state( r * gamma + dot[ id ] ) );
        out.add_transition( q, sigma.star(), frac_state( c - gamma ) );
    }
    for ( std::size_t i = 0; i < frac_work.size(); ++i )
    {
        auto [ q, beta ] = frac_work[ i ];
        for ( std::uint32_t id = 0; id < k; ++id )
            out.add_transition( q, symbol{ id }, frac_state( r * beta - dot[ id ] ) );
        out.add_transition( q, sigma.star(), sink );
    }

    for ( std::uint32_t id = 0; id < k; ++id )
    {
        out.add_transition( sink, symbol{ id }, sink );
        out.add_transition( top, symbol{ id }, top );
        out.add_transition( bottom, symbol{ id }, bottom );
        out.add_transition( always, symbol{ id }, always );
    }
    out.add_transition( sink, sigma.star(), sink );
    out.add_transition( top, sigma.star(), sink );
    out.add_transition( bottom, sigma.star(), leq ? always : sink );
    out.add_transition( always, sigma.star(), sink );
    return out;
}

inline rva build_atom( const linear_atom& atom, const std::vector< std::string >& frame, unsigned base )
{
    detail::check_frame( frame, static_cast< unsigned >( atom.coefficients.size() ) );
    return { minimize_weak( build_atom_automaton( atom, base ) ), frame };
}

/// {x : x_i ∈ ℤ}: after the separator, component i reads only 0 or only
/// r-1, the choice being made by the first fractional symbol.
inline rva integrality_automaton( unsigned component, const std::vector< std::string >& frame, unsigned base )
{
    const auto n = static_cast< unsigned >( frame.size() );
    if ( component >= n )
        throw index_out_of_range( "component " + std::to_string( component ) + " of arity " + std::to_string( n ) );
    alphabet sigma( base, n );
    buchi_automaton a( sigma );
    state_id start = a.add_state(), whole = a.add_state(), pick = a.add_state(), zeros = a.add_state( true ),
             nines = a.add_state( true ), sink = a.add_state();
    a.set_initial( start );
    for ( std::uint32_t id = 0; id < sigma.digit_vector_count(); ++id )
    {
        symbol s{ id };
        unsigned d = sigma.digit( s, component );
        a.add_transition( start, s, sigma.is_sign_vector( s ) ? whole : sink );
        a.add_transition( whole, s, whole );
        a.add_transition( pick, s, d == 0 ? zeros : d == base - 1 ? nines : sink );
        a.add_transition( zeros, s, d == 0 ? zeros : sink );
        a.add_transition( nines, s, d == base - 1 ? nines : sink );
        a.add_transition( sink, s, sink );
    }
    a.add_transition( start, sigma.star(), sink );
    a.add_transition( whole, sigma.star(), pick );
    for ( state_id q : { pick, zeros, nines, sink } )
        a.add_transition( q, sigma.star(), sink );
    return { minimize_weak( a ), frame };
}

inline rva rva_intersect( const rva& a, const rva& b )
{
    detail::check_compatible( a, b );
    return { minimize_weak( product( a.automaton, b.automaton, product_mode::intersect ) ), a.frame };
}

inline rva rva_union( const rva& a, const rva& b )
{
    detail::check_compatible( a, b );
    return { minimize_weak( product( a.automaton, b.automaton, product_mode::unite ) ), a.frame };
}

/// ℝⁿ minus the set of a: flip every status, then cut back to V.
inline rva rva_complement( const rva& a )
{
    auto flipped = complement_weak( a.automaton );
    auto valid = valid_encoding_language( a.arity(), a.base() );
    return { minimize_weak( product( flipped, valid, product_mode::intersect ) ), a.frame };
}

/// Erases one component from every digit-vector label. The result is
/// generally nondeterministic.
inline buchi_automaton erase_component( const buchi_automaton& a, unsigned component )
{
    if ( component >= a.arity() )
        throw index_out_of_range( "component " + std::to_string( component ) + " of arity " +
                                  std::to_string( a.arity() ) );
    buchi_automaton out( a.sigma().without_component() );
    for ( state_id q = 0; q < a.num_states(); ++q )
        out.add_state( a.is_accepting( q ) );
    out.set_initial( a.initial() );
    for ( state_id q = 0; q < a.num_states(); ++q )
        for ( const auto& t : a.transitions( q ) )
            out.add_transition( q, a.sigma().erase( t.label, component ), t.target );
    return out;
}

/// Closes L(a) under adding and removing leading copies of the sign vector:
/// the result accepts s^j·w (j ≥ 1) iff a accepts s^k·w for some k ≥ 1.
///
/// A fresh initial state moves on each sign vector s to a chain state that
/// can repeat s any number of times, and otherwise behaves like the set C_s
/// of states a reaches from its initial state on s^k, k ≥ 1.
inline buchi_automaton complete_sign_extensions( const buchi_automaton& a )
{
    const alphabet& sigma = a.sigma();
    buchi_automaton out = a;
    state_id entry = out.add_state();
    out.set_initial( entry );
    for ( symbol s : sigma.sign_vectors() )
    {
        std::set< state_id > closure, frontier{ a.initial() };
        while ( !frontier.empty() )
        {
            std::set< state_id > next;
            for ( state_id q : frontier )
                for ( const auto& t : a.successors( q, s ) )
                    if ( closure.insert( t.target ).second )
                        next.insert( t.target );
            frontier = std::move( next );
        }
        state_id chain = out.add_state();
        out.add_transition( entry, s, chain );
        out.add_transition( chain, s, chain );
        for ( state_id q : closure )
            for ( const auto& t : a.transitions( q ) )
                out.add_transition( chain, t.label, t.target );
    }
    return out;
}

/// Sizes and timings of one projection, for reporting.
struct projection_stages
{
    rva result;
    std::size_t erased_states = 0;      // reachable states of the completed NFA
    std::size_t determinized_states = 0; // breakpoint pair-states
    double ms_determinize = 0;
    double ms_minimize = 0;
};

/// ∃x_i: erase, complete sign extensions, determinize (asserting inherent
/// weakness), normalize to weak, intersect with V and minimize.
inline projection_stages project_staged( const rva& a, unsigned component, pipeline_observer* observer = nullptr,
                                         std::size_t max_states = 0 )
{
    using clock = std::chrono::steady_clock;
    auto ms = []( clock::time_point from ) {
        return std::chrono::duration< double, std::milli >( clock::now() - from ).count();
    };
    require_deterministic_complete( a.automaton, "project" );
    require_weak( a.automaton, "project" );

    projection_stages st;
    auto t0 = clock::now();
    auto completed = trim( complete_sign_extensions( erase_component( a.automaton, component ) ) );
    st.erased_states = completed.num_states();
    auto det = determinize_weak( completed, observer, max_states );
    st.ms_determinize = ms( t0 );
    if ( observer )
        st.determinized_states = observer->determinizations.back().pair_states;
    else
        st.determinized_states = det.num_states();

    auto t1 = clock::now();
    auto frame = a.frame;
    frame.erase( frame.begin() + component );
    auto valid = valid_encoding_language( a.arity() - 1, a.base() );
    st.result = { minimize_weak( product( det, valid, product_mode::intersect ) ), std::move( frame ) };
    st.ms_minimize = ms( t1 );
    return st;
}

inline rva project( const rva& a, unsigned component, pipeline_observer* observer = nullptr )
{
    return project_staged( a, component, observer ).result;
}

/// Whether the vector x belongs to the set of a. Also checks that the dual
/// encoding and a sign-extended encoding get the same verdict.
inline bool member( const rva& a, const rational_vector& x )
{
    if ( x.size() != a.arity() )
        throw arity_mismatch( "vector of size " + std::to_string( x.size() ) + " against arity " +
                              std::to_string( a.arity() ) );
    const unsigned r = a.base();
    std::size_t p = *minimal_integer_length( x, r );
    bool verdict = accepts_lasso( a.automaton, *encode_vector( x, r, p ) );
    bool extended = accepts_lasso( a.automaton, *encode_vector( x, r, p + 2 ) );
    bool dual = verdict;
    if ( auto ph = minimal_integer_length( x, r, encoding_variant::high ) )
        dual = accepts_lasso( a.automaton, *encode_vector( x, r, *ph, encoding_variant::high ) );
    if ( verdict != extended || verdict != dual )
        throw error( "automaton accepts only some encodings of a vector" );
    return verdict;
}

} // namespace wrva
