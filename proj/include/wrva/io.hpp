// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>

namespace wrva
{

/// {"base", "arity", "states", "initial", "accepting", "transitions"}; one
/// transition record per (from, symbol) with the sorted target list.
inline nlohmann::json to_json( const buchi_automaton& a )
{
    nlohmann::json j;
    j[ "base" ] = a.base();
    j[ "arity" ] = a.arity();
    j[ "states" ] = a.num_states();
    j[ "initial" ] = a.initial();
    j[ "accepting" ] = a.accepting_states();
    auto transitions = nlohmann::json::array();
    for ( state_id q = 0; q < a.num_states(); ++q )
    {
        auto out = a.transitions( q );
        for ( std::size_t i = 0; i < out.size(); )
        {
            symbol s = out[ i ].label;
            auto targets = nlohmann::json::array();
            for ( ; i < out.size() && out[ i ].label == s; ++i )
                targets.push_back( out[ i ].target );
            nlohmann::json rec;
            rec[ "from" ] = q;
            if ( a.sigma().is_star( s ) )
                rec[ "symbol" ] = "star";
            else
                rec[ "symbol" ] = a.sigma().digits( s );
            rec[ "to" ] = std::move( targets );
            transitions.push_back( std::move( rec ) );
        }
    }
    j[ "transitions" ] = std::move( transitions );
    return j;
}

inline buchi_automaton automaton_from_json( const nlohmann::json& j )
{
    try
    {
        alphabet sigma( j.at( "base" ).get< unsigned >(), j.at( "arity" ).get< unsigned >() );
        buchi_automaton a( sigma );
        auto n = j.at( "states" ).get< std::size_t >();
        for ( std::size_t q = 0; q < n; ++q )
            a.add_state();
        if ( n > 0 )
            a.set_initial( j.at( "initial" ).get< state_id >() );
        for ( const auto& q : j.at( "accepting" ) )
            a.set_accepting( q.get< state_id >() );
        for ( const auto& rec : j.at( "transitions" ) )
        {
            const auto& sym = rec.at( "symbol" );
            symbol s;
            if ( sym.is_string() )
            {
                if ( sym.get< std::string >() != "star" )
                    throw invalid_encoding( "unknown symbol " + sym.dump() );
                s = sigma.star();
            }
            else
                s = sigma.make( sym.get< std::vector< unsigned > >() );
            for ( const auto& to : rec.at( "to" ) )
                a.add_transition( rec.at( "from" ).get< state_id >(), s, to.get< state_id >() );
        }
        return a;
    }
    catch ( const nlohmann::json::exception& e )
    {
        throw invalid_encoding( std::string( "malformed automaton JSON: " ) + e.what() );
    }
}

/// Graphviz rendering. Nodes in id order, accepting ones as double circles;
/// one edge per transition, ordered by source state then symbol.
inline void write_dot( std::ostream& os, const buchi_automaton& a, const std::string& name = "rva" )
{
    os << "digraph " << name << " {\n";
    os << "  rankdir=LR;\n";
    os << "  init [shape=point];\n";
    for ( state_id q = 0; q < a.num_states(); ++q )
        os << "  q" << q << " [shape=" << ( a.is_accepting( q ) ? "doublecircle" : "circle" ) << "];\n";
    if ( a.num_states() > 0 )
        os << "  init -> q" << a.initial() << ";\n";
    for ( state_id q = 0; q < a.num_states(); ++q )
        for ( const auto& t : a.transitions( q ) )
            os << "  q" << q << " -> q" << t.target << " [label=\"" << a.sigma().label( t.label ) << "\"];\n";
    os << "}\n";
}

inline std::string to_dot( const buchi_automaton& a, const std::string& name = "rva" )
{
    std::ostringstream os;
    write_dot( os, a, name );
    return os.str();
}

} // namespace wrva
