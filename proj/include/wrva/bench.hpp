// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "compile.hpp"
#include "formula.hpp"
#include "rva.hpp"

#include <chrono>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace wrva
{

struct bench_spec
{
    std::size_t cases = 30;
    unsigned base = 2;
    std::uint64_t seed = 1;
    unsigned min_atoms = 2;
    unsigned max_atoms = 4;
    std::int64_t max_coefficient = 6;
    std::int64_t max_constant = 12;
    std::size_t pair_state_limit = 100000;
};

/// ∃k∈ℤ (a₁·(x,y,z,k) ≤ c₁ ∧ ... ∧ aₘ·(x,y,z,k) ≤ cₘ) over free x, y, z.
struct bench_case
{
    std::string id;
    formula body;
    formula sentence; // the quantified formula
};

inline std::vector< bench_case > generate_bench( const bench_spec& spec )
{
    static const std::vector< std::string > vars{ "x", "y", "z", "k" };
    std::mt19937_64 rng( spec.seed );
    auto pick = [ & ]( std::int64_t lo, std::int64_t hi ) {
        return std::uniform_int_distribution< std::int64_t >( lo, hi )( rng );
    };
    std::vector< bench_case > out;
    for ( std::size_t i = 0; i < spec.cases; ++i )
    {
        auto m = static_cast< unsigned >( pick( spec.min_atoms, spec.max_atoms ) );
        std::vector< formula > atoms;
        for ( unsigned j = 0; j < m; ++j )
        {
            linear_constraint c;
            for ( const auto& v : vars )
                if ( auto a = pick( -spec.max_coefficient, spec.max_coefficient ); a != 0 )
                    c.coefficients[ v ] = a;
            // the periodicity variable appears in the first atom
            if ( j == 0 && !c.coefficients.contains( "k" ) )
                c.coefficients[ "k" ] = pick( 0, 1 ) ? 2 : -2;
            c.bound = pick( -spec.max_constant, spec.max_constant );
            atoms.push_back( formula::atom( std::move( c ) ) );
        }
        formula body = formula::conjunction( std::move( atoms ) );
        out.push_back( { "c" + std::to_string( i ), body, formula::exists( "k", sort::integer, body ) } );
    }
    return out;
}

struct bench_record
{
    std::string id;
    unsigned base = 2;
    unsigned arity = 3;
    std::size_t n_atom = 0;   // body automaton over (x,y,z,k), integrality included
    std::size_t n_erased = 0; // NFA after erasing k and completing sign extensions
    std::size_t n_det = 0;    // breakpoint pair-states
    std::size_t n_min = 0;    // canonical result over (x,y,z)
    double ms_build = 0;
    double ms_det = 0;
    double ms_min = 0;
    bool soft_failure = false; // pair-state limit hit
};

inline bench_record run_bench_case( const bench_case& c, const bench_spec& spec, pipeline_observer* observer = nullptr )
{
    using clock = std::chrono::steady_clock;
    const std::vector< std::string > frame{ "x", "y", "z", "k" };
    bench_record rec;
    rec.id = c.id;
    rec.base = spec.base;
    compile_options o;
    o.base = spec.base;

    auto t0 = clock::now();
    rva body = detail::compile_in( c.body, frame, o );
    body = rva_intersect( body, integrality_automaton( 3, frame, spec.base ) );
    rec.ms_build = std::chrono::duration< double, std::milli >( clock::now() - t0 ).count();
    rec.n_atom = body.automaton.num_states();

    try
    {
        auto st = project_staged( body, 3, observer, spec.pair_state_limit + 1 );
        rec.n_erased = st.erased_states;
        rec.n_det = st.determinized_states;
        rec.n_min = st.result.automaton.num_states();
        rec.ms_det = st.ms_determinize;
        rec.ms_min = st.ms_minimize;
    }
    catch ( const state_limit_exceeded& )
    {
        rec.soft_failure = true;
        rec.n_det = spec.pair_state_limit + 1;
    }
    return rec;
}

inline std::vector< bench_record > run_bench( const bench_spec& spec, pipeline_observer* observer = nullptr )
{
    std::vector< bench_record > out;
    for ( const auto& c : generate_bench( spec ) )
        out.push_back( run_bench_case( c, spec, observer ) );
    return out;
}

/// CSV with '#' comment lines describing the corpus before the header and
/// per-case observations after the rows.
inline void write_bench_csv( std::ostream& os, const bench_spec& spec, const std::vector< bench_record >& records )
{
    os << "# corpus: exists k in Int, conjunction of " << spec.min_atoms << ".." << spec.max_atoms
       << " random <=-atoms over (x,y,z,k); |a_i| <= " << spec.max_coefficient << ", |c| <= " << spec.max_constant
       << ", k in the first atom; seed " << spec.seed << "\n";
    os << "# n_det counts pair-states before weak normalization; soft failure above " << spec.pair_state_limit
       << "\n";
    os << "id,base,arity,n_atom,n_erased,n_det,n_min,ms_build,ms_det,ms_min\n";
    auto fixed = []( double ms ) {
        char buf[ 32 ];
        std::snprintf( buf, sizeof buf, "%.3f", ms );
        return std::string( buf );
    };
    for ( const auto& r : records )
        os << r.id << ',' << r.base << ',' << r.arity << ',' << r.n_atom << ',' << r.n_erased << ',' << r.n_det << ','
           << r.n_min << ',' << fixed( r.ms_build ) << ',' << fixed( r.ms_det ) << ',' << fixed( r.ms_min ) << '\n';
    std::size_t shrunk = 0, soft = 0;
    for ( const auto& r : records )
    {
        if ( r.soft_failure )
        {
            ++soft;
            os << "# soft-failure " << r.id << " pair-states > " << spec.pair_state_limit << "\n";
        }
        else if ( r.n_min <= r.n_atom )
            ++shrunk;
        else
            os << "# grew " << r.id << " " << r.n_atom << " -> " << r.n_min << "\n";
    }
    os << "# smaller-or-equal after projection: " << shrunk << "/" << records.size() - soft << "\n";
    os << "# soft failures: " << soft << "\n";
}

} // namespace wrva
