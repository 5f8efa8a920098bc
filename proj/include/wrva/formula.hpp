// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"
#include "rva.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace wrva
{

enum class sort
{
    real,
    integer,
};

/// Σ coefficient·variable (=|≤) bound, integer coefficients only.
struct linear_constraint
{
    std::map< std::string, std::int64_t > coefficients;
    std::int64_t bound = 0;
    relation rel = relation::leq;

    friend bool operator==( const linear_constraint&, const linear_constraint& ) = default;
};

/// Immutable formula of linear arithmetic over reals and integers. Free
/// variables range over ℝ; integrality of a free variable is the `integral`
/// atom.
class formula
{
public:
    enum class kind
    {
        truth,
        atom,
        integral,
        negation,
        conjunction,
        disjunction,
        exists,
        forall,
    };

    static formula truth( bool value )
    {
        auto n = std::make_shared< node >();
        n->k = kind::truth;
        n->value = value;
        return formula( std::move( n ) );
    }

    static formula atom( linear_constraint c )
    {
        auto n = std::make_shared< node >();
        n->k = kind::atom;
        n->constraint = std::move( c );
        return formula( std::move( n ) );
    }

    static formula integral( std::string var )
    {
        auto n = std::make_shared< node >();
        n->k = kind::integral;
        n->var = std::move( var );
        return formula( std::move( n ) );
    }

    static formula negation( formula f )
    {
        auto n = std::make_shared< node >();
        n->k = kind::negation;
        n->children.push_back( std::move( f ) );
        return formula( std::move( n ) );
    }

    static formula conjunction( std::vector< formula > fs ) { return nary( kind::conjunction, std::move( fs ) ); }
    static formula disjunction( std::vector< formula > fs ) { return nary( kind::disjunction, std::move( fs ) ); }

    static formula exists( std::string var, sort s, formula body )
    {
        return quantified( kind::exists, std::move( var ), s, std::move( body ) );
    }

    static formula forall( std::string var, sort s, formula body )
    {
        return quantified( kind::forall, std::move( var ), s, std::move( body ) );
    }

    kind which() const { return _node->k; }
    bool value() const { return _node->value; }
    const linear_constraint& constraint() const { return _node->constraint; }
    const std::string& variable() const { return _node->var; }
    sort variable_sort() const { return _node->s; }
    const std::vector< formula >& children() const { return _node->children; }
    const formula& body() const { return _node->children.front(); }

    bool is_quantifier_free() const
    {
        if ( which() == kind::exists || which() == kind::forall )
            return false;
        for ( const auto& c : children() )
            if ( !c.is_quantifier_free() )
                return false;
        return true;
    }

    std::set< std::string > free_variables() const
    {
        std::set< std::string > out;
        collect_free( out );
        return out;
    }

    /// S-expression text that parse() reads back.
    std::string to_string() const
    {
        switch ( which() )
        {
        case kind::truth:
            return value() ? "true" : "false";
        case kind::atom:
        {
            std::string lhs;
            std::size_t terms = 0;
            for ( const auto& [ v, c ] : constraint().coefficients )
            {
                lhs += ( terms++ ? " " : "" ) + ( c == 1 ? v : "(* " + std::to_string( c ) + " " + v + ")" );
            }
            if ( terms == 0 )
                lhs = "0";
            else if ( terms > 1 )
                lhs = "(+ " + lhs + ")";
            return std::string( "(" ) + ( constraint().rel == relation::eq ? "=" : "<=" ) + " " + lhs + " " +
                   std::to_string( constraint().bound ) + ")";
        }
        case kind::integral:
            return "(int " + variable() + ")";
        case kind::negation:
            return "(not " + body().to_string() + ")";
        case kind::conjunction:
        case kind::disjunction:
        {
            std::string out = which() == kind::conjunction ? "(and" : "(or";
            for ( const auto& c : children() )
                out += " " + c.to_string();
            return out + ")";
        }
        case kind::exists:
        case kind::forall:
            return std::string( "(" ) + ( which() == kind::exists ? "exists" : "forall" ) + " (" + variable() +
                   ( variable_sort() == sort::integer ? " Int) " : " Real) " ) + body().to_string() + ")";
        }
        return {};
    }

private:
    struct node
    {
        kind k = kind::truth;
        bool value = true;
        linear_constraint constraint;
        std::string var;
        sort s = sort::real;
        std::vector< formula > children;
    };

    explicit formula( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}

    static formula nary( kind k, std::vector< formula > fs )
    {
        if ( fs.empty() )
            throw precondition_violated( "connective without operands" );
        auto n = std::make_shared< node >();
        n->k = k;
        n->children = std::move( fs );
        return formula( std::move( n ) );
    }

    static formula quantified( kind k, std::string var, sort s, formula body )
    {
        auto n = std::make_shared< node >();
        n->k = k;
        n->var = std::move( var );
        n->s = s;
        n->children.push_back( std::move( body ) );
        return formula( std::move( n ) );
    }

    void collect_free( std::set< std::string >& out ) const
    {
        switch ( which() )
        {
        case kind::atom:
            for ( const auto& [ v, c ] : constraint().coefficients )
                out.insert( v );
            break;
        case kind::integral:
            out.insert( variable() );
            break;
        case kind::exists:
        case kind::forall:
        {
            std::set< std::string > inner;
            body().collect_free( inner );
            inner.erase( variable() );
            out.insert( inner.begin(), inner.end() );
            break;
        }
        default:
            for ( const auto& c : children() )
                c.collect_free( out );
        }
    }

    std::shared_ptr< const node > _node;
};

} // namespace wrva
