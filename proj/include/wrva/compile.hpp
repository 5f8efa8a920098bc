// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "emptiness.hpp"
#include "encoding.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "minimize.hpp"
#include "rva.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace wrva
{

struct compile_options
{
    unsigned base = 2;
    pipeline_observer* observer = nullptr;
    std::size_t max_states = 0; // per determinization, 0 = unlimited
};

/// The component order of a compiled formula: `order` when given (it must
/// name every free variable exactly once, extra names are allowed), else the
/// free variables in lexicographic order.
inline std::vector< std::string > resolve_order( const formula& f, const std::vector< std::string >& order = {} )
{
    auto free = f.free_variables();
    if ( order.empty() )
        return { free.begin(), free.end() };
    auto sorted = order;
    std::sort( sorted.begin(), sorted.end() );
    if ( std::adjacent_find( sorted.begin(), sorted.end() ) != sorted.end() )
        throw frame_mismatch( "variable order names a variable twice" );
    for ( const auto& v : free )
        if ( !std::binary_search( sorted.begin(), sorted.end(), v ) )
            throw unbound_variable( "free variable '" + v + "' missing from the variable order" );
    return order;
}

namespace detail
{

// Innermost binding wins: the last occurrence of the name.
inline unsigned frame_index( const std::vector< std::string >& frame, const std::string& name )
{
    for ( std::size_t i = frame.size(); i-- > 0; )
        if ( frame[ i ] == name )
            return static_cast< unsigned >( i );
    throw unbound_variable( "variable '" + name + "' is not in the frame" );
}

inline rva compile_in( const formula& f, const std::vector< std::string >& frame, const compile_options& o );

inline rva compile_exists( const std::string& var, sort s, const formula& body, const std::vector< std::string >& frame,
                           const compile_options& o )
{
    auto inner = frame;
    inner.push_back( var );
    rva b = compile_in( body, inner, o );
    const auto last = static_cast< unsigned >( frame.size() );
    if ( s == sort::integer )
        b = rva_intersect( b, integrality_automaton( last, inner, o.base ) );
    return project_staged( b, last, o.observer, o.max_states ).result;
}

inline rva compile_in( const formula& f, const std::vector< std::string >& frame, const compile_options& o )
{
    switch ( f.which() )
    {
    case formula::kind::truth:
        return f.value() ? valid_encoding_automaton( frame, o.base ) : empty_rva( frame, o.base );
    case formula::kind::atom:
    {
        linear_atom atom;
        atom.coefficients.assign( frame.size(), 0 );
        atom.constant = f.constraint().bound;
        atom.rel = f.constraint().rel;
        for ( const auto& [ v, c ] : f.constraint().coefficients )
            atom.coefficients[ frame_index( frame, v ) ] += c;
        return build_atom( atom, frame, o.base );
    }
    case formula::kind::integral:
        return integrality_automaton( frame_index( frame, f.variable() ), frame, o.base );
    case formula::kind::negation:
        return rva_complement( compile_in( f.body(), frame, o ) );
    case formula::kind::conjunction:
    case formula::kind::disjunction:
    {
        rva acc = compile_in( f.children().front(), frame, o );
        for ( std::size_t i = 1; i < f.children().size(); ++i )
        {
            rva next = compile_in( f.children()[ i ], frame, o );
            acc = f.which() == formula::kind::conjunction ? rva_intersect( acc, next ) : rva_union( acc, next );
        }
        return acc;
    }
    case formula::kind::exists:
        return compile_exists( f.variable(), f.variable_sort(), f.body(), frame, o );
    case formula::kind::forall:
        return rva_complement(
            compile_exists( f.variable(), f.variable_sort(), formula::negation( f.body() ), frame, o ) );
    }
    throw precondition_violated( "unknown formula node" );
}

// Exact truth value under frame[i] = values[i], innermost binding last.
inline bool evaluate_in( const formula& f, const std::vector< std::string >& frame, const rational_vector& values,
                         const compile_options& o )
{
    switch ( f.which() )
    {
    case formula::kind::truth:
        return f.value();
    case formula::kind::atom:
    {
        rational lhs = 0;
        for ( const auto& [ v, c ] : f.constraint().coefficients )
            lhs += rational( c ) * values[ frame_index( frame, v ) ];
        rational rhs( f.constraint().bound );
        return f.constraint().rel == relation::eq ? lhs == rhs : lhs <= rhs;
    }
    case formula::kind::integral:
        return boost::multiprecision::denominator( values[ frame_index( frame, f.variable() ) ] ) == 1;
    case formula::kind::negation:
        return !evaluate_in( f.body(), frame, values, o );
    case formula::kind::conjunction:
        for ( const auto& c : f.children() )
            if ( !evaluate_in( c, frame, values, o ) )
                return false;
        return true;
    case formula::kind::disjunction:
        for ( const auto& c : f.children() )
            if ( evaluate_in( c, frame, values, o ) )
                return true;
        return false;
    case formula::kind::exists:
    case formula::kind::forall:
        return member( compile_in( f, frame, o ), values );
    }
    throw precondition_violated( "unknown formula node" );
}

} // namespace detail

/// Canonical weak deterministic RVA of the solutions of f. Quantified
/// variables are appended as the last component of their body and projected
/// away; ∀ is ¬∃¬.
inline rva compile( const formula& f, const compile_options& o = {}, const std::vector< std::string >& order = {} )
{
    return detail::compile_in( f, resolve_order( f, order ), o );
}

/// Truth of f at a point of its frame. Quantifier-free parts are evaluated
/// exactly; quantified subformulas through membership in their compiled RVA.
inline bool evaluate( const formula& f, const std::vector< std::string >& frame, const rational_vector& values,
                      const compile_options& o = {} )
{
    if ( values.size() != frame.size() )
        throw arity_mismatch( "point of size " + std::to_string( values.size() ) + " for a frame of " +
                              std::to_string( frame.size() ) );
    return detail::evaluate_in( f, frame, values, o );
}

struct decision
{
    bool satisfiable = false;
    std::vector< std::string > frame;
    rational_vector model;              // meaningful when satisfiable
    std::optional< lasso_word > witness; // the accepted lasso the model was decoded from
};

/// Satisfiability of f with a verified model.
inline decision decide( const formula& f, const compile_options& o = {}, const std::vector< std::string >& order = {} )
{
    decision d;
    d.frame = resolve_order( f, order );
    rva a = detail::compile_in( f, d.frame, o );
    d.witness = find_lasso( a.automaton );
    if ( !d.witness )
        return d;
    d.satisfiable = true;
    d.model = decode_lasso( *d.witness, a.base(), a.arity() );
    if ( !evaluate( f, d.frame, d.model, o ) )
        throw error( "decoded model does not satisfy the formula" );
    return d;
}

/// Common frame of two formulas: sorted union of their free variables.
inline std::vector< std::string > common_frame( const formula& f, const formula& g )
{
    auto vars = f.free_variables();
    auto more = g.free_variables();
    vars.insert( more.begin(), more.end() );
    return { vars.begin(), vars.end() };
}

/// L(f) ⊆ L(g) over a common frame.
inline bool included( const formula& f, const formula& g, const compile_options& o = {},
                      const std::vector< std::string >& order = {} )
{
    auto frame = order.empty() ? common_frame( f, g ) : order;
    frame = resolve_order( formula::conjunction( { f, g } ), frame );
    return is_empty( detail::compile_in( formula::conjunction( { f, formula::negation( g ) } ), frame, o ).automaton );
}

struct comparison
{
    bool equivalent = false;
    std::vector< std::string > frame;
    std::optional< lasso_word > witness; // in exactly one of the two sets
    rational_vector point;
    bool witness_in_first = false;
};

/// Equivalence by isomorphism of canonical forms. When different, a witness
/// from the nonempty side of the symmetric difference.
inline comparison compare( const formula& f, const formula& g, const compile_options& o = {},
                           const std::vector< std::string >& order = {} )
{
    comparison out;
    out.frame = resolve_order( formula::conjunction( { f, g } ), order.empty() ? common_frame( f, g ) : order );
    rva a = detail::compile_in( f, out.frame, o );
    rva b = detail::compile_in( g, out.frame, o );
    out.equivalent = isomorphic( a.automaton, b.automaton );
    if ( out.equivalent )
        return out;
    out.witness = find_lasso( rva_intersect( a, rva_complement( b ) ).automaton );
    out.witness_in_first = out.witness.has_value();
    if ( !out.witness )
        out.witness = find_lasso( rva_intersect( b, rva_complement( a ) ).automaton );
    if ( !out.witness )
        throw error( "distinct canonical forms for the same set" );
    out.point = decode_lasso( *out.witness, o.base, static_cast< unsigned >( out.frame.size() ) );
    return out;
}

inline bool equivalent( const formula& f, const formula& g, const compile_options& o = {},
                        const std::vector< std::string >& order = {} )
{
    auto frame = resolve_order( formula::conjunction( { f, g } ), order.empty() ? common_frame( f, g ) : order );
    return isomorphic( detail::compile_in( f, frame, o ).automaton, detail::compile_in( g, frame, o ).automaton );
}

} // namespace wrva
