// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wrva
{

// Interned transition label. Within an alphabet of base r and arity n, digit
// vectors occupy ids [0, r^n) in lexicographic order of their digit tuples
// (component 0 most significant) and the separator is id r^n.
struct symbol
{
    std::uint32_t id = 0;

    friend constexpr auto operator<=>( symbol, symbol ) = default;
};

class alphabet
{
public:
    static constexpr std::uint32_t max_size = 1u << 24;

    alphabet() : alphabet( 2, 0 ) {}

    alphabet( unsigned base, unsigned arity ) : _base{ base }, _arity{ arity }
    {
        if ( base < 2 )
            throw precondition_violated( "base must be at least 2" );
        std::uint64_t count = 1;
        for ( unsigned i = 0; i < arity; ++i )
        {
            count *= base;
            if ( count >= max_size )
                throw precondition_violated( "alphabet too large for base " + std::to_string( base ) +
                                             " and arity " + std::to_string( arity ) );
        }
        _digit_vectors = static_cast< std::uint32_t >( count );
    }

    unsigned base() const noexcept { return _base; }
    unsigned arity() const noexcept { return _arity; }

    /// Number of digit-vector symbols, r^n.
    std::uint32_t digit_vector_count() const noexcept { return _digit_vectors; }
    /// Digit vectors plus the separator.
    std::uint32_t size() const noexcept { return _digit_vectors + 1; }

    symbol star() const noexcept { return symbol{ _digit_vectors }; }
    bool is_star( symbol s ) const noexcept { return s.id == _digit_vectors; }
    bool contains( symbol s ) const noexcept { return s.id <= _digit_vectors; }

    symbol make( std::span< const unsigned > digits ) const
    {
        if ( digits.size() != _arity )
            throw symbol_mismatch( "digit vector has " + std::to_string( digits.size() ) +
                                   " components, expected " + std::to_string( _arity ) );
        std::uint32_t id = 0;
        for ( unsigned d : digits )
        {
            if ( d >= _base )
                throw symbol_mismatch( "digit " + std::to_string( d ) + " out of range for base " +
                                       std::to_string( _base ) );
            id = id * _base + d;
        }
        return symbol{ id };
    }

    symbol make( std::initializer_list< unsigned > digits ) const
    {
        return make( std::span< const unsigned >( digits.begin(), digits.size() ) );
    }

    std::vector< unsigned > digits( symbol s ) const
    {
        std::vector< unsigned > out( _arity );
        std::uint32_t id = s.id;
        for ( unsigned i = _arity; i-- > 0; )
        {
            out[ i ] = id % _base;
            id /= _base;
        }
        return out;
    }

    unsigned digit( symbol s, unsigned component ) const
    {
        std::uint32_t id = s.id;
        for ( unsigned i = _arity - 1; i > component; --i )
            id /= _base;
        return id % _base;
    }

    /// True for digit vectors whose every digit is 0 or r-1.
    bool is_sign_vector( symbol s ) const
    {
        if ( is_star( s ) )
            return false;
        std::uint32_t id = s.id;
        for ( unsigned i = 0; i < _arity; ++i )
        {
            unsigned d = id % _base;
            if ( d != 0 && d != _base - 1 )
                return false;
            id /= _base;
        }
        return true;
    }

    std::vector< symbol > sign_vectors() const
    {
        std::vector< symbol > out;
        for ( std::uint32_t id = 0; id < _digit_vectors; ++id )
            if ( is_sign_vector( symbol{ id } ) )
                out.push_back( symbol{ id } );
        return out;
    }

    /// The symbol of the arity n-1 alphabet obtained by dropping one component.
    symbol erase( symbol s, unsigned component ) const
    {
        alphabet smaller = without_component();
        if ( is_star( s ) )
            return smaller.star();
        auto d = digits( s );
        d.erase( d.begin() + component );
        return smaller.make( d );
    }

    alphabet without_component() const
    {
        if ( _arity == 0 )
            throw index_out_of_range( "cannot drop a component of an arity-0 alphabet" );
        return alphabet( _base, _arity - 1 );
    }

    /// Human-readable label: "⋆", a single digit for scalar alphabets in
    /// bases up to 10, otherwise "[d1,...,dn]".
    std::string label( symbol s ) const
    {
        if ( is_star( s ) )
            return "⋆";
        auto d = digits( s );
        if ( _arity == 1 && _base <= 10 )
            return std::to_string( d[ 0 ] );
        std::string out = "[";
        for ( std::size_t i = 0; i < d.size(); ++i )
        {
            if ( i )
                out += ',';
            out += std::to_string( d[ i ] );
        }
        return out + "]";
    }

    friend bool operator==( const alphabet&, const alphabet& ) = default;

private:
    unsigned _base;
    unsigned _arity;
    std::uint32_t _digit_vectors = 1;
};

} // namespace wrva
