// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wrva
{

/// Base of every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class precondition_violated : public error
{
public:
    using error::error;
};

/// A reachable SCC carries both accepting and rejecting cycles. On the
/// arithmetic pipeline this is an internal soundness failure.
class not_inherently_weak : public error
{
public:
    using error::error;
};

class arity_mismatch : public error
{
public:
    using error::error;
};

class base_mismatch : public error
{
public:
    using error::error;
};

class symbol_mismatch : public error
{
public:
    using error::error;
};

class invalid_encoding : public error
{
public:
    using error::error;
};

class integer_part_too_short : public error
{
public:
    using error::error;
};

class index_out_of_range : public error
{
public:
    using error::error;
};

class frame_mismatch : public error
{
public:
    using error::error;
};

class unbound_variable : public error
{
public:
    using error::error;
};

class zero_denominator : public error
{
public:
    using error::error;
};

class state_limit_exceeded : public error
{
public:
    using error::error;
};

class syntax_error : public error
{
public:
    syntax_error( const std::string& what, std::size_t offset )
            : error( what + " at offset " + std::to_string( offset ) ), _offset{ offset }
    {}

    std::size_t offset() const noexcept { return _offset; }

private:
    std::size_t _offset;
};

} // namespace wrva
