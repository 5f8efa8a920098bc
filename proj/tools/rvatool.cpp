// SPDX-License-Identifier: Apache-2.0
//
// rvatool: decide, build and inspect real vector automata from formulas.
//
//   rvatool decide FILE        SAT/UNSAT with a model
//   rvatool model FILE         one "name = value" line per variable
//   rvatool build FILE         RVA as JSON
//   rvatool dot FILE           RVA as Graphviz
//   rvatool stats FILE         sizes and pipeline checks
//   rvatool equiv FILE FILE    EQUIVALENT/DIFFERENT with a witness
//   rvatool bench SPEC         benchmark CSV; SPEC is "default" or k=v,...
//
// Exit codes: 0 SAT/EQUIVALENT/success, 1 UNSAT/DIFFERENT, 2 usage or input
// error, 3 internal invariant failure.

#include <wrva/wrva.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

enum exit_code
{
    ok = 0,
    negative = 1,
    usage = 2,
    internal = 3,
};

struct input_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct settings
{
    unsigned base = 2;
    std::string order;
    std::string out;
    bool json = false;
};

std::string read_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw input_error( "cannot read '" + path + "'" );
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector< std::string > split( const std::string& text, char sep )
{
    std::vector< std::string > out;
    std::stringstream ss( text );
    for ( std::string item; std::getline( ss, item, sep ); )
        if ( !item.empty() )
            out.push_back( item );
    return out;
}

wrva::compile_options options_of( const settings& s, wrva::pipeline_observer* observer = nullptr )
{
    wrva::compile_options o;
    o.base = s.base;
    o.observer = observer;
    return o;
}

// Writes to --out when given, else stdout.
void emit( const settings& s, const std::string& text )
{
    if ( s.out.empty() )
    {
        std::cout << text;
        return;
    }
    std::ofstream f( s.out, std::ios::binary );
    if ( !f )
        throw input_error( "cannot write '" + s.out + "'" );
    f << text;
}

std::string assignments( const std::vector< std::string >& frame, const wrva::rational_vector& x,
                         const std::string& sep )
{
    std::string out;
    for ( std::size_t i = 0; i < frame.size(); ++i )
        out += ( i ? sep : "" ) + frame[ i ] + " = " + wrva::to_string( x[ i ] );
    return out;
}

nlohmann::json model_json( const std::vector< std::string >& frame, const wrva::rational_vector& x )
{
    nlohmann::json m = nlohmann::json::object();
    for ( std::size_t i = 0; i < frame.size(); ++i )
        m[ frame[ i ] ] = wrva::to_string( x[ i ] );
    return m;
}

int run_decide( const settings& s, const std::string& file, bool model_only )
{
    auto f = wrva::parse( read_file( file ) );
    auto d = wrva::decide( f, options_of( s ), split( s.order, ',' ) );
    std::string text;
    if ( s.json )
    {
        nlohmann::json j;
        j[ "result" ] = d.satisfiable ? "SAT" : "UNSAT";
        j[ "frame" ] = d.frame;
        if ( d.satisfiable )
        {
            j[ "model" ] = model_json( d.frame, d.model );
            j[ "lasso" ] =
                wrva::format_lasso( *d.witness, wrva::alphabet( s.base, static_cast< unsigned >( d.frame.size() ) ) );
        }
        text = j.dump( 2 ) + "\n";
    }
    else if ( !d.satisfiable )
        text = "UNSAT\n";
    else if ( model_only )
        text = assignments( d.frame, d.model, "\n" ) + ( d.frame.empty() ? "" : "\n" );
    else
        text = "SAT" + std::string( d.frame.empty() ? "" : " " ) + assignments( d.frame, d.model, ", " ) + "\n";
    emit( s, text );
    return d.satisfiable ? ok : negative;
}

wrva::rva compile_file( const settings& s, const std::string& file, wrva::pipeline_observer* observer = nullptr )
{
    auto f = wrva::parse( read_file( file ) );
    return wrva::compile( f, options_of( s, observer ), split( s.order, ',' ) );
}

int run_build( const settings& s, const std::string& file )
{
    auto a = compile_file( s, file );
    auto j = wrva::to_json( a.automaton );
    j[ "frame" ] = a.frame;
    emit( s, j.dump( 2 ) + "\n" );
    return ok;
}

int run_dot( const settings& s, const std::string& file )
{
    emit( s, wrva::to_dot( compile_file( s, file ).automaton ) );
    return ok;
}

int run_stats( const settings& s, const std::string& file )
{
    wrva::pipeline_observer observer;
    auto a = compile_file( s, file, &observer );
    std::size_t max_pairs = 0;
    bool weak = true, subset = true;
    for ( const auto& r : observer.determinizations )
    {
        max_pairs = std::max( max_pairs, r.pair_states );
        weak = weak && r.inherently_weak;
        subset = subset && r.subset_invariant;
    }
    nlohmann::json j;
    j[ "base" ] = a.base();
    j[ "frame" ] = a.frame;
    j[ "states" ] = a.automaton.num_states();
    j[ "transitions" ] = a.automaton.num_transitions();
    j[ "empty" ] = wrva::is_empty( a.automaton );
    j[ "determinizations" ] = observer.determinizations.size();
    j[ "max_pair_states" ] = max_pairs;
    j[ "inherently_weak" ] = weak;
    j[ "subset_invariant" ] = subset;
    if ( s.json )
    {
        emit( s, j.dump( 2 ) + "\n" );
        return ok;
    }
    std::ostringstream os;
    for ( const auto& [ key, value ] : j.items() )
        os << key << ": " << value.dump() << "\n";
    emit( s, os.str() );
    return ok;
}

int run_equiv( const settings& s, const std::string& first, const std::string& second )
{
    auto f = wrva::parse( read_file( first ) );
    auto g = wrva::parse( read_file( second ) );
    auto c = wrva::compare( f, g, options_of( s ), split( s.order, ',' ) );
    std::string text;
    wrva::alphabet sigma( s.base, static_cast< unsigned >( c.frame.size() ) );
    if ( s.json )
    {
        nlohmann::json j;
        j[ "result" ] = c.equivalent ? "EQUIVALENT" : "DIFFERENT";
        j[ "frame" ] = c.frame;
        if ( !c.equivalent )
        {
            j[ "witness" ] = wrva::format_lasso( *c.witness, sigma );
            j[ "point" ] = model_json( c.frame, c.point );
            j[ "in" ] = c.witness_in_first ? "first" : "second";
        }
        text = j.dump( 2 ) + "\n";
    }
    else if ( c.equivalent )
        text = "EQUIVALENT\n";
    else
        text = "DIFFERENT\nwitness " + wrva::format_lasso( *c.witness, sigma ) + "\npoint " +
               ( c.frame.empty() ? std::string( "()" ) : assignments( c.frame, c.point, ", " ) ) + "\nonly in " +
               ( c.witness_in_first ? first : second ) + "\n";
    emit( s, text );
    return c.equivalent ? ok : negative;
}

wrva::bench_spec parse_bench_spec( const std::string& text, unsigned base )
{
    wrva::bench_spec spec;
    spec.base = base;
    if ( text == "default" )
        return spec;
    for ( const auto& item : split( text, ',' ) )
    {
        auto eq = item.find( '=' );
        if ( eq == std::string::npos )
            throw input_error( "bench spec item '" + item + "' is not key=value" );
        std::string key = item.substr( 0, eq );
        std::uint64_t value = 0;
        try
        {
            value = std::stoull( item.substr( eq + 1 ) );
        }
        catch ( const std::exception& )
        {
            throw input_error( "bench spec value in '" + item + "' is not a number" );
        }
        if ( key == "cases" )
            spec.cases = value;
        else if ( key == "seed" )
            spec.seed = value;
        else if ( key == "min_atoms" )
            spec.min_atoms = static_cast< unsigned >( value );
        else if ( key == "max_atoms" )
            spec.max_atoms = static_cast< unsigned >( value );
        else if ( key == "max_coefficient" )
            spec.max_coefficient = static_cast< std::int64_t >( value );
        else if ( key == "max_constant" )
            spec.max_constant = static_cast< std::int64_t >( value );
        else if ( key == "limit" )
            spec.pair_state_limit = value;
        else
            throw input_error( "unknown bench spec key '" + key + "'" );
    }
    if ( spec.min_atoms == 0 || spec.min_atoms > spec.max_atoms )
        throw input_error( "bench spec needs 1 <= min_atoms <= max_atoms" );
    return spec;
}

int run_bench( const settings& s, const std::string& text )
{
    auto spec = parse_bench_spec( text, s.base );
    std::ostringstream os;
    wrva::write_bench_csv( os, spec, wrva::run_bench( spec ) );
    emit( s, os.str() );
    return ok;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Decision procedure for linear arithmetic over reals and integers with weak automata" };
    app.require_subcommand( 1 );
    settings s;
    app.add_option( "--base", s.base, "Numeration base (default 2)" )->check( CLI::Range( 2u, 64u ) );
    app.add_option( "--order", s.order, "Comma-separated variable order" );
    app.add_option( "--out", s.out, "Write output to this path" );
    app.add_flag( "--json", s.json, "JSON output" );
    app.fallthrough();

    std::string file, second, spec_text;
    auto* decide = app.add_subcommand( "decide", "Satisfiability with a model" );
    decide->add_option( "file", file )->required();
    auto* model = app.add_subcommand( "model", "Print a model, one variable per line" );
    model->add_option( "file", file )->required();
    auto* build = app.add_subcommand( "build", "Write the canonical RVA as JSON" );
    build->add_option( "file", file )->required();
    auto* dot = app.add_subcommand( "dot", "Write the canonical RVA as DOT" );
    dot->add_option( "file", file )->required();
    auto* stats = app.add_subcommand( "stats", "Automaton sizes and pipeline checks" );
    stats->add_option( "file", file )->required();
    auto* equiv = app.add_subcommand( "equiv", "Compare two formulas" );
    equiv->add_option( "first", file )->required();
    equiv->add_option( "second", second )->required();
    auto* bench = app.add_subcommand( "bench", "Run the benchmark corpus and write a CSV report" );
    bench->add_option( "spec", spec_text, "\"default\" or key=value,... (cases, seed, min_atoms, max_atoms, "
                                          "max_coefficient, max_constant, limit)" )
        ->default_val( "default" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e );
        return usage;
    }

    try
    {
        if ( decide->parsed() )
            return run_decide( s, file, false );
        if ( model->parsed() )
            return run_decide( s, file, true );
        if ( build->parsed() )
            return run_build( s, file );
        if ( dot->parsed() )
            return run_dot( s, file );
        if ( stats->parsed() )
            return run_stats( s, file );
        if ( equiv->parsed() )
            return run_equiv( s, file, second );
        if ( bench->parsed() )
            return run_bench( s, spec_text );
    }
    catch ( const input_error& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    catch ( const wrva::syntax_error& e )
    {
        std::cerr << "syntax error: " << e.what() << "\n";
        return usage;
    }
    catch ( const wrva::not_inherently_weak& e )
    {
        std::cerr << "internal failure: " << e.what() << "\n";
        return internal;
    }
    catch ( const wrva::state_limit_exceeded& e )
    {
        std::cerr << "internal failure: " << e.what() << "\n";
        return internal;
    }
    catch ( const wrva::unbound_variable& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    catch ( const wrva::zero_denominator& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    catch ( const wrva::frame_mismatch& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    catch ( const wrva::precondition_violated& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    catch ( const std::exception& e )
    {
        std::cerr << "internal failure: " << e.what() << "\n";
        return internal;
    }
    return usage;
}
