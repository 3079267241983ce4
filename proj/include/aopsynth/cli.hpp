/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file cli.hpp
  \brief Command-line front end: synth, gen, adder, verify, stats and export.

  Exit codes: 0 success (or equivalent), 1 counterexample or bound
  violation, 2 usage error, 3 invalid input data.
*/

#pragma once

#include "aop_core.hpp"
#include "circuit.hpp"
#include "frontend.hpp"
#include "io/blif.hpp"
#include "io/dot.hpp"
#include "io/json_io.hpp"
#include "symtree.hpp"
#include "verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace aopsynth
{

namespace exit_code
{
constexpr int ok = 0;
constexpr int failed_check = 1;
constexpr int usage = 2;
constexpr int bad_data = 3;
} // namespace exit_code

namespace detail
{

/*! \brief Thrown for invalid flag values detected after parsing. */
class usage_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct synth_flags
{
  std::string input;
  std::string output;
  bool no_normalize{ false };
  std::string zeta;
  bool buffer2{ false };
  std::string arrival_scale;
};

inline void add_synth_flags( CLI::App& cmd, synth_flags& f )
{
  cmd.add_option( "-o,--output", f.output, "Write the circuit here (.blif for BLIF, JSON otherwise)" );
  cmd.add_flag( "--no-normalize", f.no_normalize, "Construct on the original arrival times" );
  cmd.add_option( "--zeta", f.zeta, "Feasibility slack constant as a rational, default 19/10" );
  cmd.add_flag( "--buffer2", f.buffer2, "Insert buffers so that every node drives at most two fanins" );
  cmd.add_option( "--arrival-scale", f.arrival_scale,
                  "Accept rational arrival times, multiply them by this factor and round up" );
}

inline synth_config make_config( synth_flags const& f, std::ostream& err )
{
  synth_config config;
  config.normalize = !f.no_normalize;
  if ( !f.zeta.empty() )
  {
    try
    {
      config.zeta = parse_rational( f.zeta );
      if ( zeta_outside_proven_range( config.zeta ) )
      {
        err << "warning: zeta " << config.zeta.to_string()
            << " lies outside [1, 19/10]; the delay guarantees are not proven for it\n";
      }
    }
    catch ( std::exception const& e )
    {
      throw usage_error( std::string( "--zeta: " ) + e.what() );
    }
  }
  return config;
}

inline arrival_reader make_arrival_reader( std::string const& scale )
{
  arrival_reader r;
  if ( !scale.empty() )
  {
    try
    {
      r.scale = parse_rational( scale );
    }
    catch ( std::exception const& e )
    {
      throw usage_error( std::string( "--arrival-scale: " ) + e.what() );
    }
  }
  return r;
}

inline bool has_suffix( std::string const& s, std::string_view suffix )
{
  return s.size() >= suffix.size() && s.compare( s.size() - suffix.size(), suffix.size(), suffix ) == 0;
}

inline circuit load_circuit( std::string const& path, arrival_reader const& arrivals )
{
  auto const text = read_text_file( path );
  if ( has_suffix( path, ".blif" ) )
  {
    return read_blif( text );
  }
  return circuit_from_json( parse_json_text( text, path ), arrivals );
}

inline void write_file( std::string const& path, std::string const& text )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out || !( out << text ) )
  {
    throw data_error( "cannot write '" + path + "'" );
  }
}

inline void save_circuit( std::string const& path, circuit const& c )
{
  if ( path.empty() )
  {
    return;
  }
  write_file( path, has_suffix( path, ".blif" ) ? write_blif( c ) : circuit_to_json( c ).dump( 2 ) + "\n" );
}

/*! \brief Shared tail of synth and gen: optional buffering, output file and report. */
inline int finish_synth( synth_result& r, synth_flags const& f, std::ostream& out )
{
  ojson report;
  if ( f.buffer2 )
  {
    auto buffered = rebuffer( r.circ, 2u );
    report["unbuffered_delay"] = r.timing.circuit_delay;
    r.timing = compute_timing( buffered );
    r.circ = std::move( buffered );
  }
  report.update( timing_to_json( r.timing ) );
  report["d"] = r.d;
  report["shift"] = r.shift;
  report["recursive_calls"] = r.stats.calls;
  save_circuit( f.output, r.circ );
  out << report.dump( 2 ) << '\n';
  return exit_code::ok;
}

inline std::vector<arrival_t> parse_arrival_flags( std::vector<std::string> const& values, unsigned width,
                                                   arrival_reader const& arrivals, std::string const& flag )
{
  if ( values.empty() )
  {
    return std::vector<arrival_t>( width, 0u );
  }
  if ( values.size() != width )
  {
    throw usage_error( flag + ": expected " + std::to_string( width ) + " values, got " +
                       std::to_string( values.size() ) );
  }
  std::vector<arrival_t> result;
  for ( auto const& v : values )
  {
    ojson j;
    if ( !v.empty() && std::all_of( v.begin(), v.end(), []( char ch ) { return ch >= '0' && ch <= '9'; } ) &&
         v.size() < 11u )
    {
      j = std::stoull( v );
    }
    else
    {
      j = v;
    }
    try
    {
      result.push_back( arrivals( j, flag ) );
    }
    catch ( data_error const& e )
    {
      throw usage_error( e.what() );
    }
  }
  return result;
}

enum class instance_type
{
  aop,
  generalized,
  adder
};

inline instance_type detect_instance( ojson const& j )
{
  if ( j.is_object() && j.contains( "width" ) )
  {
    return instance_type::adder;
  }
  if ( j.is_object() && j.contains( "ops" ) )
  {
    return instance_type::generalized;
  }
  return instance_type::aop;
}

inline std::uint64_t parse_seed( std::string const& text )
{
  try
  {
    std::size_t used = 0;
    auto const v = std::stoull( text, &used, 0 );
    if ( used != text.size() )
    {
      throw std::invalid_argument( text );
    }
    return v;
  }
  catch ( std::exception const& )
  {
    throw usage_error( "--seed: not an integer: '" + text + "'" );
  }
}

} // namespace detail

/*! \brief Runs one command line (without the program name); returns the exit code. */
inline int run_cli( std::vector<std::string> args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Delay-optimized synthesis of AND-OR paths, generalized paths and adders", "aopsynth" };
  app.require_subcommand( 1, 1 );

  detail::synth_flags synth_f, gen_f, adder_f;
  auto* synth_cmd = app.add_subcommand( "synth", "Synthesize an AND-OR path instance" );
  synth_cmd->add_option( "-i,--input", synth_f.input, "Instance JSON" )->required();
  detail::add_synth_flags( *synth_cmd, synth_f );

  auto* gen_cmd = app.add_subcommand( "gen", "Synthesize a generalized AND-OR path" );
  gen_cmd->add_option( "-i,--input", gen_f.input, "Generalized instance JSON" )->required();
  detail::add_synth_flags( *gen_cmd, gen_f );

  unsigned width = 0;
  std::vector<std::string> ax, ay;
  bool sums = false;
  auto* adder_cmd = app.add_subcommand( "adder", "Build a carry-chain adder" );
  adder_cmd->add_option( "-i,--input", adder_f.input, "Adder spec JSON (alternative to the flags)" );
  adder_cmd->add_option( "--width", width, "Operand width r" );
  adder_cmd->add_option( "--arrivals-x", ax, "Arrival times of x0..x{r-1} (comma separated)" )->delimiter( ',' );
  adder_cmd->add_option( "--arrivals-y", ay, "Arrival times of y0..y{r-1} (comma separated)" )->delimiter( ',' );
  adder_cmd->add_flag( "--sums", sums, "Emit sum bits (XOR2) instead of carries only" );
  detail::add_synth_flags( *adder_cmd, adder_f );

  std::string verify_circ, verify_inst, verify_seed, verify_scale;
  bool exhaustive = false;
  std::uint64_t random_count = 0;
  unsigned exhaustive_limit = synth_config{}.exhaustive_limit;
  auto* verify_cmd = app.add_subcommand( "verify", "Check a circuit against an instance" );
  verify_cmd->add_option( "-c,--circuit", verify_circ, "Circuit (JSON or .blif)" )->required();
  verify_cmd->add_option( "-i,--input", verify_inst, "Instance, generalized instance or adder spec JSON" )->required();
  auto* ex_flag = verify_cmd->add_flag( "--exhaustive", exhaustive, "Check all assignments" );
  verify_cmd->add_option( "--random", random_count, "Check this many random assignments" )->excludes( ex_flag );
  verify_cmd->add_option( "--seed", verify_seed, "Seed of the random check (default AOP_SEED or 0xA0A0)" );
  verify_cmd->add_option( "--exhaustive-limit", exhaustive_limit, "Largest input count checked exhaustively" );
  verify_cmd->add_option( "--arrival-scale", verify_scale, "Accept rational arrival times (see synth)" );

  std::string stats_circ, stats_inst, stats_zeta, stats_scale;
  bool stats_no_normalize = false;
  auto* stats_cmd = app.add_subcommand( "stats", "Report delay, size and fanout against the guarantees" );
  stats_cmd->add_option( "-c,--circuit", stats_circ, "Circuit (JSON or .blif)" )->required();
  stats_cmd->add_option( "-i,--input", stats_inst, "Instance the circuit was synthesized from" );
  stats_cmd->add_option( "--zeta", stats_zeta, "Feasibility slack constant used for synthesis" );
  stats_cmd->add_flag( "--no-normalize", stats_no_normalize, "The circuit was synthesized without normalization" );
  stats_cmd->add_option( "--arrival-scale", stats_scale, "Accept rational arrival times (see synth)" );

  std::string export_circ, export_format, export_out;
  auto* export_cmd = app.add_subcommand( "export", "Convert a circuit to DOT, BLIF or JSON" );
  export_cmd->add_option( "-c,--circuit", export_circ, "Circuit (JSON or .blif)" )->required();
  export_cmd->add_option( "--format", export_format, "Output format" )
      ->required()
      ->check( CLI::IsMember( { "dot", "blif", "json" } ) );
  export_cmd->add_option( "-o,--output", export_out, "Output file (default: standard output)" );

  try
  {
    std::reverse( args.begin(), args.end() );
    app.parse( args );
  }
  catch ( CLI::CallForHelp const& )
  {
    out << app.help();
    return exit_code::ok;
  }
  catch ( CLI::CallForAllHelp const& )
  {
    out << app.help( "", CLI::AppFormatMode::All );
    return exit_code::ok;
  }
  catch ( CLI::ParseError const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }

  try
  {
    if ( synth_cmd->parsed() )
    {
      auto const config = detail::make_config( synth_f, err );
      auto const inst =
          instance_from_json( read_json_file( synth_f.input ), detail::make_arrival_reader( synth_f.arrival_scale ) );
      auto r = synth( inst, config );
      return detail::finish_synth( r, synth_f, out );
    }
    if ( gen_cmd->parsed() )
    {
      auto const config = detail::make_config( gen_f, err );
      auto const inst =
          generalized_from_json( read_json_file( gen_f.input ), detail::make_arrival_reader( gen_f.arrival_scale ) );
      auto r = synth_generalized( inst, config );
      return detail::finish_synth( r, gen_f, out );
    }
    if ( adder_cmd->parsed() )
    {
      auto const config = detail::make_config( adder_f, err );
      auto const arrivals = detail::make_arrival_reader( adder_f.arrival_scale );
      adder_spec spec;
      if ( !adder_f.input.empty() )
      {
        if ( width != 0u || !ax.empty() || !ay.empty() )
        {
          throw detail::usage_error( "adder: give either -i or --width/--arrivals-*, not both" );
        }
        spec = adder_from_json( read_json_file( adder_f.input ), arrivals );
        spec.emit_sums = spec.emit_sums || sums;
      }
      else
      {
        if ( width == 0u )
        {
          throw detail::usage_error( "adder: --width (>= 1) or -i is required" );
        }
        spec.width = width;
        spec.x_arrivals = detail::parse_arrival_flags( ax, width, arrivals, "--arrivals-x" );
        spec.y_arrivals = detail::parse_arrival_flags( ay, width, arrivals, "--arrivals-y" );
        spec.emit_sums = sums;
      }
      auto r = build_adder( spec, config );
      ojson report;
      if ( adder_f.buffer2 )
      {
        auto buffered = rebuffer( r.circ, 2u );
        report["unbuffered_delay"] = r.timing.circuit_delay;
        r.timing = compute_timing( buffered );
        r.circ = std::move( buffered );
      }
      report.update( timing_to_json( r.timing ) );
      ojson carries = ojson::array();
      for ( auto const& info : r.carries )
      {
        carries.push_back( { { "path_length", info.path_length }, { "delay", info.delay } } );
      }
      report["carries"] = std::move( carries );
      if ( spec.emit_sums )
      {
        report["sum_delay_two_level"] = r.sum_delay_two_level;
      }
      detail::save_circuit( adder_f.output, r.circ );
      out << report.dump( 2 ) << '\n';
      return exit_code::ok;
    }
    if ( verify_cmd->parsed() )
    {
      auto const arrivals = detail::make_arrival_reader( verify_scale );
      auto const c = detail::load_circuit( verify_circ, arrivals );
      auto const j = read_json_file( verify_inst );
      check_options opts;
      opts.exhaustive_limit = exhaustive_limit;
      if ( exhaustive )
      {
        opts.mode = check_mode::exhaustive;
      }
      else if ( random_count > 0u )
      {
        opts.mode = check_mode::random;
        opts.random_vectors = random_count;
      }
      if ( !verify_seed.empty() )
      {
        opts.seed = detail::parse_seed( verify_seed );
      }
      if ( opts.mode == check_mode::exhaustive && c.num_inputs() > opts.exhaustive_limit )
      {
        throw detail::usage_error( "--exhaustive: " + std::to_string( c.num_inputs() ) +
                                   " inputs exceed the exhaustive limit of " + std::to_string( opts.exhaustive_limit ) );
      }
      equivalence_verdict v;
      try
      {
        switch ( detail::detect_instance( j ) )
        {
        case detail::instance_type::adder:
          v = check_adder( c, adder_from_json( j, arrivals ), opts );
          break;
        case detail::instance_type::generalized:
          v = check_equivalence( c, generalized_from_json( j, arrivals ), opts );
          break;
        case detail::instance_type::aop:
          v = check_equivalence( c, instance_from_json( j, arrivals ), opts );
          break;
        }
      }
      catch ( std::invalid_argument const& e )
      {
        throw data_error( e.what() );
      }
      out << verdict_to_json( v ).dump( 2 ) << '\n';
      return v.equivalent ? exit_code::ok : exit_code::failed_check;
    }
    if ( stats_cmd->parsed() )
    {
      detail::synth_flags f;
      f.zeta = stats_zeta;
      f.no_normalize = stats_no_normalize;
      auto const config = detail::make_config( f, err );
      auto const arrivals = detail::make_arrival_reader( stats_scale );
      auto const c = detail::load_circuit( stats_circ, arrivals );
      bound_report b;
      ojson extra = ojson::object();
      if ( stats_inst.empty() )
      {
        b = check_bounds( c );
      }
      else
      {
        auto const j = read_json_file( stats_inst );
        switch ( detail::detect_instance( j ) )
        {
        case detail::instance_type::aop:
          try
          {
            b = check_bounds( c, instance_from_json( j, arrivals ), config );
          }
          catch ( std::invalid_argument const& e )
          {
            throw data_error( e.what() );
          }
          break;
        case detail::instance_type::generalized:
        {
          auto const inst = generalized_from_json( j, arrivals );
          b = check_bounds( c );
          b.bound_plus7.reset();
          b.bound_4_3.reset();
          b.violations.erase( std::remove( b.violations.begin(), b.violations.end(), "delay exceeds the +7 bound" ),
                              b.violations.end() );
          weight w = 0;
          for ( auto const& in : inst.inputs )
          {
            w += weight_of( in.arrival );
          }
          auto const bound = generalized_delay_bound( w, inst.changes() );
          extra["changes"] = inst.changes();
          extra["generalized_delay_bound"] = static_cast<double>( bound );
          if ( static_cast<long double>( b.achieved_delay ) > bound )
          {
            b.violations.push_back( "delay exceeds the generalized delay bound" );
          }
          break;
        }
        case detail::instance_type::adder:
          b = check_bounds( c );
          break;
        }
      }
      auto report = bounds_to_json( b );
      report.update( extra );
      out << report.dump( 2 ) << '\n';
      return b.ok() ? exit_code::ok : exit_code::failed_check;
    }
    if ( export_cmd->parsed() )
    {
      auto const c = detail::load_circuit( export_circ, {} );
      std::string text;
      if ( export_format == "dot" )
      {
        text = write_dot( c );
      }
      else if ( export_format == "blif" )
      {
        text = write_blif( c );
      }
      else
      {
        text = circuit_to_json( c ).dump( 2 ) + "\n";
      }
      if ( export_out.empty() )
      {
        out << text;
      }
      else
      {
        detail::write_file( export_out, text );
      }
      return exit_code::ok;
    }
  }
  catch ( detail::usage_error const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  catch ( std::exception const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_data;
  }
  return exit_code::usage;
}

} // namespace aopsynth
