// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "automaton.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "symbol.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace wrva
{

/// Which of the (at most two) encodings of a fixed integer-part length.
enum class encoding_variant
{
    low,  // standard expansion
    high, // terminating components rewritten to end in (r-1)^ω
};

/// Base-r expansion of one number: whole part plus an ultimately periodic
/// fractional digit sequence pre · period^ω.
struct expansion
{
    integer whole;
    std::vector< unsigned > pre;
    std::vector< unsigned > period;

    bool terminating() const { return period.size() == 1 && period[ 0 ] == 0; }

    unsigned fraction_digit( std::size_t k ) const
    {
        return k < pre.size() ? pre[ k ] : period[ ( k - pre.size() ) % period.size() ];
    }
};

inline expansion expand( const rational& x, unsigned base )
{
    expansion e;
    e.whole = floor_of( x );
    rational frac = x - rational( e.whole );
    integer num = boost::multiprecision::numerator( frac ), den = boost::multiprecision::denominator( frac );
    std::map< integer, std::size_t > seen;
    std::vector< unsigned > digits;
    while ( num != 0 && !seen.contains( num ) )
    {
        seen.emplace( num, digits.size() );
        num *= base;
        digits.push_back( static_cast< unsigned >( num / den ) );
        num %= den;
    }
    std::size_t start = num == 0 ? digits.size() : seen[ num ];
    e.pre.assign( digits.begin(), digits.begin() + static_cast< std::ptrdiff_t >( start ) );
    if ( num == 0 )
        e.period = { 0 };
    else
        e.period.assign( digits.begin() + static_cast< std::ptrdiff_t >( start ), digits.end() );
    return e;
}

/// The other encoding of a number with a terminating expansion.
inline expansion dual_expansion( const expansion& e, unsigned base )
{
    expansion d = e;
    d.period = { base - 1 };
    if ( d.pre.empty() )
        d.whole -= 1;
    else
        d.pre.back() -= 1;
    return d;
}

namespace detail
{

inline bool fits( const integer& whole, unsigned base, std::size_t p )
{
    integer bound = boost::multiprecision::pow( integer( base ), static_cast< unsigned >( p - 1 ) );
    return -bound <= whole && whole < bound;
}

// r's-complement digits of `whole` on p positions, most significant first.
inline std::vector< unsigned > integer_digits( const integer& whole, unsigned base, std::size_t p )
{
    integer v = whole;
    if ( v < 0 )
        v += boost::multiprecision::pow( integer( base ), static_cast< unsigned >( p ) );
    std::vector< unsigned > out( p );
    for ( std::size_t i = p; i-- > 0; )
    {
        out[ i ] = static_cast< unsigned >( v % base );
        v /= base;
    }
    return out;
}

inline std::optional< std::vector< expansion > > expansions( const rational_vector& x, unsigned base,
                                                            encoding_variant variant )
{
    std::vector< expansion > out;
    bool any_dual = false;
    for ( const auto& v : x.values )
    {
        expansion e = expand( v, base );
        if ( variant == encoding_variant::high && e.terminating() )
        {
            e = dual_expansion( e, base );
            any_dual = true;
        }
        out.push_back( std::move( e ) );
    }
    if ( variant == encoding_variant::high && !any_dual )
        return std::nullopt;
    return out;
}

} // namespace detail

/// Smallest integer-part length p ≥ 1 able to hold every component of the
/// chosen variant, or nothing when that variant does not exist.
inline std::optional< std::size_t > minimal_integer_length( const rational_vector& x, unsigned base,
                                                            encoding_variant variant = encoding_variant::low )
{
    auto parts = detail::expansions( x, base, variant );
    if ( !parts )
        return std::nullopt;
    std::size_t p = 1;
    for ( const auto& e : *parts )
        while ( !detail::fits( e.whole, base, p ) )
            ++p;
    return p;
}

/// Encoding of x with integer-part length p. The HIGH variant is absent when
/// no component has a terminating base-r expansion.
inline std::optional< lasso_word > encode_vector( const rational_vector& x, unsigned base, std::size_t p,
                                                  encoding_variant variant = encoding_variant::low )
{
    alphabet sigma( base, static_cast< unsigned >( x.size() ) );
    if ( p == 0 )
        throw integer_part_too_short( "integer-part length must be at least 1" );
    auto parts = detail::expansions( x, base, variant );
    if ( !parts )
        return std::nullopt;

    std::size_t pre = 0, period = 1;
    std::vector< std::vector< unsigned > > ints;
    for ( const auto& e : *parts )
    {
        if ( !detail::fits( e.whole, base, p ) )
            throw integer_part_too_short( "integer part " + e.whole.str() + " needs more than " + std::to_string( p ) +
                                          " digits in base " + std::to_string( base ) );
        ints.push_back( detail::integer_digits( e.whole, base, p ) );
        pre = std::max( pre, e.pre.size() );
        period = std::lcm( period, e.period.size() );
    }

    std::vector< unsigned > digits( x.size() );
    auto column = [ & ]( auto&& digit_of ) {
        for ( std::size_t c = 0; c < x.size(); ++c )
            digits[ c ] = digit_of( c );
        return sigma.make( digits );
    };
    lasso_word w;
    for ( std::size_t i = 0; i < p; ++i )
        w.prefix.push_back( column( [ & ]( std::size_t c ) { return ints[ c ][ i ]; } ) );
    w.prefix.push_back( sigma.star() );
    for ( std::size_t k = 0; k < pre; ++k )
        w.prefix.push_back( column( [ & ]( std::size_t c ) { return ( *parts )[ c ].fraction_digit( k ); } ) );
    for ( std::size_t k = pre; k < pre + period; ++k )
        w.period.push_back( column( [ & ]( std::size_t c ) { return ( *parts )[ c ].fraction_digit( k ); } ) );
    return w;
}

/// Exact value of a valid encoding u·v^ω.
inline rational_vector decode_lasso( const lasso_word& w, unsigned base, unsigned arity )
{
    alphabet sigma( base, arity );
    if ( w.period.empty() )
        throw invalid_encoding( "empty period" );
    for ( const auto* part : { &w.prefix, &w.period } )
        for ( symbol s : *part )
            if ( !sigma.contains( s ) )
                throw invalid_encoding( "symbol outside the alphabet" );
    for ( symbol s : w.period )
        if ( sigma.is_star( s ) )
            throw invalid_encoding( "separator inside the period" );
    std::size_t star = w.prefix.size();
    for ( std::size_t i = 0; i < w.prefix.size(); ++i )
        if ( sigma.is_star( w.prefix[ i ] ) )
        {
            if ( star != w.prefix.size() )
                throw invalid_encoding( "more than one separator" );
            star = i;
        }
    if ( star == w.prefix.size() )
        throw invalid_encoding( "no separator" );
    if ( star == 0 )
        throw invalid_encoding( "no sign symbol before the separator" );
    if ( !sigma.is_sign_vector( w.prefix[ 0 ] ) )
        throw invalid_encoding( "illegal sign digit" );

    const integer r = base;
    integer period_scale = boost::multiprecision::pow( r, static_cast< unsigned >( w.period.size() ) ) - 1;
    std::vector< rational > out;
    for ( unsigned c = 0; c < arity; ++c )
    {
        integer whole = sigma.digit( w.prefix[ 0 ], c ) == base - 1 ? -1 : 0;
        for ( std::size_t i = 1; i < star; ++i )
            whole = whole * r + sigma.digit( w.prefix[ i ], c );
        integer pre = 0, pre_scale = 1;
        for ( std::size_t i = star + 1; i < w.prefix.size(); ++i )
        {
            pre = pre * r + sigma.digit( w.prefix[ i ], c );
            pre_scale *= r;
        }
        integer cycle = 0;
        for ( symbol s : w.period )
            cycle = cycle * r + sigma.digit( s, c );
        out.push_back( rational( whole ) + rational( pre, pre_scale ) + rational( cycle, pre_scale * period_scale ) );
    }
    return rational_vector( std::move( out ) );
}

/// Text form: one label per symbol (see alphabet::label), period in
/// parentheses, e.g. "005⋆5(0)" or "[0,1]⋆([1,0])".
inline std::string format_lasso( const lasso_word& w, const alphabet& sigma )
{
    std::string out;
    for ( symbol s : w.prefix )
        out += sigma.label( s );
    out += "(";
    for ( symbol s : w.period )
        out += sigma.label( s );
    return out + ")";
}

/// Inverse of format_lasso; also accepts '*' for the separator.
inline lasso_word parse_lasso( const std::string& text, const alphabet& sigma )
{
    lasso_word w;
    auto* target = &w.prefix;
    bool closed = false;
    std::size_t i = 0;
    auto bad = [ & ]( const std::string& why ) { return invalid_encoding( why + " in lasso '" + text + "'" ); };
    while ( i < text.size() )
    {
        if ( closed )
            throw bad( "trailing characters" );
        char ch = text[ i ];
        if ( text.compare( i, 3, "⋆" ) == 0 )
        {
            target->push_back( sigma.star() );
            i += 3;
        }
        else if ( ch == '*' )
        {
            target->push_back( sigma.star() );
            ++i;
        }
        else if ( ch == '(' )
        {
            if ( target == &w.period )
                throw bad( "nested period" );
            target = &w.period;
            ++i;
        }
        else if ( ch == ')' )
        {
            if ( target != &w.period )
                throw bad( "unbalanced ')'" );
            closed = true;
            ++i;
        }
        else if ( ch == '[' )
        {
            auto end = text.find( ']', i );
            if ( end == std::string::npos )
                throw bad( "unterminated '['" );
            std::vector< unsigned > digits;
            std::string body = text.substr( i + 1, end - i - 1 );
            std::size_t pos = 0;
            while ( pos < body.size() )
            {
                auto comma = body.find( ',', pos );
                if ( comma == std::string::npos )
                    comma = body.size();
                digits.push_back( static_cast< unsigned >( std::stoul( body.substr( pos, comma - pos ) ) ) );
                pos = comma + 1;
            }
            target->push_back( sigma.make( digits ) );
            i = end + 1;
        }
        else if ( ch >= '0' && ch <= '9' && sigma.arity() == 1 )
        {
            target->push_back( sigma.make( { static_cast< unsigned >( ch - '0' ) } ) );
            ++i;
        }
        else
            throw bad( std::string( "unexpected character '" ) + ch + "'" );
    }
    if ( !closed || w.period.empty() )
        throw bad( "missing period" );
    return w;
}

} // namespace wrva
