// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"
#include "formula.hpp"
#include "rational.hpp"

#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wrva
{

namespace detail
{

class formula_parser
{
public:
    explicit formula_parser( const std::string& text, std::optional< std::vector< std::string > > declared = {} )
        : _free{ std::move( declared ) }, _text{ text }
    {
        if ( _free )
            _scope = *_free;
    }

    formula parse_document()
    {
        formula f = parse_formula();
        skip_space();
        if ( _pos != _text.size() )
            fail( "trailing input after formula" );
        return f;
    }

private:
    // Σ coefficient·variable + constant, exact.
    struct term
    {
        std::map< std::string, rational > coefficients;
        rational constant;

        term& add( const term& o, const rational& scale = 1 )
        {
            for ( const auto& [ v, c ] : o.coefficients )
                coefficients[ v ] += scale * c;
            constant += scale * o.constant;
            return *this;
        }
    };

    [[noreturn]] void fail( const std::string& what, std::optional< std::size_t > at = {} ) const
    {
        throw syntax_error( what, at.value_or( _pos ) );
    }

    void skip_space()
    {
        while ( _pos < _text.size() )
        {
            if ( std::isspace( static_cast< unsigned char >( _text[ _pos ] ) ) )
                ++_pos;
            else if ( _text[ _pos ] == ';' )
                while ( _pos < _text.size() && _text[ _pos ] != '\n' )
                    ++_pos;
            else
                break;
        }
    }

    bool peek_open()
    {
        skip_space();
        return _pos < _text.size() && _text[ _pos ] == '(';
    }

    void expect( char ch )
    {
        skip_space();
        if ( _pos >= _text.size() )
            fail( std::string( "expected '" ) + ch + "' before end of input" );
        if ( _text[ _pos ] != ch )
            fail( std::string( "expected '" ) + ch + "'" );
        ++_pos;
    }

    bool at_close()
    {
        skip_space();
        if ( _pos >= _text.size() )
            fail( "unbalanced '('" );
        return _text[ _pos ] == ')';
    }

    std::string word()
    {
        skip_space();
        std::size_t start = _pos;
        while ( _pos < _text.size() && !std::isspace( static_cast< unsigned char >( _text[ _pos ] ) ) &&
                _text[ _pos ] != '(' && _text[ _pos ] != ')' && _text[ _pos ] != ';' )
            ++_pos;
        if ( start == _pos )
            fail( _pos >= _text.size() ? "unexpected end of input" : "expected a symbol" );
        return _text.substr( start, _pos - start );
    }

    static bool is_identifier( const std::string& w )
    {
        if ( w.empty() || !( std::isalpha( static_cast< unsigned char >( w[ 0 ] ) ) || w[ 0 ] == '_' ) )
            return false;
        for ( char ch : w )
            if ( !( std::isalnum( static_cast< unsigned char >( ch ) ) || ch == '_' || ch == '\'' || ch == '.' ) )
                return false;
        return true;
    }

    static bool is_number( const std::string& w )
    {
        std::size_t i = ( w[ 0 ] == '-' || w[ 0 ] == '+' ) ? 1 : 0;
        return i < w.size() && ( std::isdigit( static_cast< unsigned char >( w[ i ] ) ) || w[ i ] == '.' );
    }

    rational number( const std::string& w, std::size_t at ) const
    {
        try
        {
            return parse_rational( w );
        }
        catch ( const invalid_encoding& )
        {
            fail( "malformed number '" + w + "'", at );
        }
    }

    std::string variable()
    {
        skip_space();
        std::size_t at = _pos;
        std::string w = word();
        if ( !is_identifier( w ) )
            fail( "expected a variable, got '" + w + "'", at );
        return w;
    }

    formula parse_formula()
    {
        skip_space();
        std::size_t at = _pos;
        if ( !peek_open() )
        {
            std::string w = word();
            if ( w == "true" || w == "false" )
                return formula::truth( w == "true" );
            fail( "expected a formula, got '" + w + "'", at );
        }
        expect( '(' );
        std::size_t head_at = _pos;
        std::string head = word();
        if ( head == "not" )
        {
            formula f = parse_formula();
            expect( ')' );
            return formula::negation( f );
        }
        if ( head == "and" || head == "or" )
        {
            std::vector< formula > parts;
            while ( !at_close() )
                parts.push_back( parse_formula() );
            expect( ')' );
            if ( parts.size() < 2 )
                fail( "'" + head + "' needs at least two operands", at );
            return head == "and" ? formula::conjunction( std::move( parts ) )
                                 : formula::disjunction( std::move( parts ) );
        }
        if ( head == "exists" || head == "forall" )
        {
            expect( '(' );
            std::string v = variable();
            skip_space();
            std::size_t sort_at = _pos;
            std::string s = word();
            if ( s != "Real" && s != "Int" )
                fail( "unknown sort '" + s + "'", sort_at );
            expect( ')' );
            _scope.push_back( v );
            formula body = parse_formula();
            _scope.pop_back();
            expect( ')' );
            sort srt = s == "Int" ? sort::integer : sort::real;
            return head == "exists" ? formula::exists( v, srt, body ) : formula::forall( v, srt, body );
        }
        if ( head == "int" )
        {
            std::string v = variable();
            expect( ')' );
            return formula::integral( v );
        }
        if ( head == "<=" || head == "<" || head == ">=" || head == ">" || head == "=" )
        {
            term lhs = parse_term();
            term rhs = parse_term();
            expect( ')' );
            // lhs - rhs ~ 0
            term diff = lhs;
            diff.add( rhs, -1 );
            term neg;
            neg.add( diff, -1 );
            if ( head == "<=" )
                return formula::atom( constraint_of( diff, relation::leq, at ) );
            if ( head == ">=" )
                return formula::atom( constraint_of( neg, relation::leq, at ) );
            if ( head == "=" )
                return formula::atom( constraint_of( diff, relation::eq, at ) );
            const term& le = head == "<" ? diff : neg;
            return formula::conjunction( { formula::atom( constraint_of( le, relation::leq, at ) ),
                                           formula::negation( formula::atom(
                                               constraint_of( le, relation::eq, at ) ) ) } );
        }
        fail( "unknown operator '" + head + "'", head_at );
    }

    term parse_term()
    {
        skip_space();
        std::size_t at = _pos;
        term t;
        if ( !peek_open() )
        {
            std::string w = word();
            if ( is_number( w ) )
                t.constant = number( w, at );
            else if ( is_identifier( w ) )
                t.coefficients[ w ] = 1;
            else
                fail( "expected a term, got '" + w + "'", at );
            return t;
        }
        expect( '(' );
        std::size_t head_at = _pos;
        std::string head = word();
        if ( head == "+" )
        {
            std::size_t n = 0;
            while ( !at_close() )
            {
                t.add( parse_term() );
                ++n;
            }
            if ( n < 2 )
                fail( "'+' needs at least two operands", at );
        }
        else if ( head == "-" )
        {
            t = parse_term();
            if ( at_close() )
            {
                term neg;
                t = neg.add( t, -1 );
            }
            else
                while ( !at_close() )
                    t.add( parse_term(), -1 );
        }
        else if ( head == "*" )
        {
            skip_space();
            std::size_t k_at = _pos;
            std::string k = word();
            if ( !is_number( k ) )
                fail( "'*' expects a rational literal first", k_at );
            t.add( parse_term(), number( k, k_at ) );
        }
        else
            fail( "unknown term operator '" + head + "'", head_at );
        expect( ')' );
        return t;
    }

    // Scales diff ~ 0 by the lcm of its denominators into Σ a·v ~ -constant.
    linear_constraint constraint_of( const term& diff, relation rel, std::size_t at )
    {
        integer scale = 1;
        auto absorb = [ & ]( const rational& q ) {
            integer d = boost::multiprecision::denominator( q );
            scale = scale / boost::multiprecision::gcd( scale, d ) * d;
        };
        for ( const auto& [ v, c ] : diff.coefficients )
            absorb( c );
        absorb( diff.constant );

        auto narrow = [ & ]( const rational& q ) {
            integer v = boost::multiprecision::numerator( q * rational( scale ) );
            if ( boost::multiprecision::abs( v ) > integer( std::numeric_limits< std::int32_t >::max() ) )
                fail( "coefficient out of range", at );
            return static_cast< std::int64_t >( v );
        };
        linear_constraint out;
        out.rel = rel;
        for ( const auto& [ v, c ] : diff.coefficients )
        {
            if ( c == 0 )
                continue;
            if ( !in_scope( v ) )
                throw unbound_variable( "variable '" + v + "' is not in scope" );
            out.coefficients[ v ] = narrow( c );
        }
        out.bound = narrow( -diff.constant );
        return out;
    }

    bool in_scope( const std::string& v ) const
    {
        if ( !_free )
            return true;
        for ( const auto& s : _scope )
            if ( s == v )
                return true;
        return false;
    }

    // When set, free variables must be declared here.
    std::optional< std::vector< std::string > > _free;
    std::vector< std::string > _scope;
    const std::string& _text;
    std::size_t _pos = 0;
};

} // namespace detail

/// Reads one formula in s-expression syntax. Free variables are unrestricted.
inline formula parse( const std::string& text )
{
    detail::formula_parser p( text );
    return p.parse_document();
}

/// As parse(), but every free variable must appear in `declared`.
inline formula parse( const std::string& text, const std::vector< std::string >& declared )
{
    detail::formula_parser p( text, declared );
    formula f = p.parse_document();
    for ( const auto& v : f.free_variables() )
    {
        bool ok = false;
        for ( const auto& d : declared )
            ok = ok || d == v;
        if ( !ok )
            throw unbound_variable( "variable '" + v + "' is not declared" );
    }
    return f;
}

} // namespace wrva
