// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace wrva
{

/// Exact rational, always in lowest terms with a positive denominator.
using rational = boost::multiprecision::cpp_rational;
using integer = boost::multiprecision::cpp_int;

struct rational_vector
{
    std::vector< rational > values;

    rational_vector() = default;
    explicit rational_vector( std::vector< rational > v ) : values{ std::move( v ) } {}
    rational_vector( std::initializer_list< rational > v ) : values( v ) {}

    std::size_t size() const noexcept { return values.size(); }
    const rational& operator[]( std::size_t i ) const { return values[ i ]; }

    friend bool operator==( const rational_vector&, const rational_vector& ) = default;
};

inline integer floor_of( const rational& x )
{
    integer n = boost::multiprecision::numerator( x ), d = boost::multiprecision::denominator( x );
    integer q = n / d;
    if ( n % d != 0 && n < 0 )
        --q;
    return q;
}

/// "p/q" or "p".
inline std::string to_string( const rational& x )
{
    integer d = boost::multiprecision::denominator( x );
    std::string out = boost::multiprecision::numerator( x ).str();
    if ( d != 1 )
        out += "/" + d.str();
    return out;
}

/// Parses "p", "-p", "p/q" or a decimal "1.25".
inline rational parse_rational( const std::string& text )
{
    auto bad = [ & ] { return invalid_encoding( "not a rational literal: '" + text + "'" ); };
    if ( text.empty() )
        throw bad();
    std::size_t pos = 0;
    bool negative = false;
    if ( text[ 0 ] == '-' || text[ 0 ] == '+' )
    {
        negative = text[ 0 ] == '-';
        pos = 1;
    }
    auto digits = [ & ]( std::size_t from, std::size_t to ) {
        if ( from >= to )
            throw bad();
        integer v = 0;
        for ( std::size_t i = from; i < to; ++i )
        {
            if ( text[ i ] < '0' || text[ i ] > '9' )
                throw bad();
            v = v * 10 + ( text[ i ] - '0' );
        }
        return v;
    };
    rational value;
    if ( auto slash = text.find( '/' ); slash != std::string::npos )
    {
        integer den = digits( slash + 1, text.size() );
        if ( den == 0 )
            throw zero_denominator( "zero denominator in '" + text + "'" );
        value = rational( digits( pos, slash ), den );
    }
    else if ( auto dot = text.find( '.' ); dot != std::string::npos )
    {
        integer whole = dot > pos ? digits( pos, dot ) : integer( 0 );
        integer frac = digits( dot + 1, text.size() );
        integer scale = 1;
        for ( std::size_t i = dot + 1; i < text.size(); ++i )
            scale *= 10;
        value = rational( whole * scale + frac, scale );
    }
    else
        value = rational( digits( pos, text.size() ) );
    return negative ? rational( -value ) : value;
}

} // namespace wrva
