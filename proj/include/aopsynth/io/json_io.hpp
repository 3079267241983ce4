/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file json_io.hpp
  \brief JSON reading and writing of circuits, instances and reports.
*/

#pragma once

#include "../aop_core.hpp"
#include "../circuit.hpp"
#include "../frontend.hpp"
#include "../numeric.hpp"
#include "../verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aopsynth
{

/*! \brief Malformed or inconsistent input data (as opposed to a usage error). */
class data_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

using ojson = nlohmann::ordered_json;

/*! \brief Converts arrival values found in files into natural numbers.
 *
 * Without a scale, arrival times must be non-negative integers. With a
 * scale, any non-negative rational ("2.75", "11/4", 2.75) is multiplied by
 * the scale and rounded up.
 */
struct arrival_reader
{
  std::optional<rational> scale;

  arrival_t operator()( ojson const& v, std::string const& where ) const
  {
    if ( !scale )
    {
      if ( v.is_number_unsigned() )
      {
        auto const a = v.get<std::uint64_t>();
        if ( a > std::numeric_limits<arrival_t>::max() )
        {
          throw data_error( where + ": arrival time too large" );
        }
        return static_cast<arrival_t>( a );
      }
      throw data_error( where + ": arrival time must be a non-negative integer (use --arrival-scale for rationals)" );
    }
    std::string text;
    if ( v.is_string() )
    {
      text = v.get<std::string>();
    }
    else if ( v.is_number() )
    {
      text = v.dump();
    }
    else
    {
      throw data_error( where + ": arrival time must be a number" );
    }
    try
    {
      return ceil_arrival( parse_rational( text ) * *scale );
    }
    catch ( std::exception const& e )
    {
      throw data_error( where + ": " + e.what() );
    }
  }
};

inline ojson parse_json_text( std::string const& text, std::string const& origin )
{
  try
  {
    return ojson::parse( text );
  }
  catch ( nlohmann::json::parse_error const& e )
  {
    throw data_error( origin + ": " + e.what() );
  }
}

inline std::string read_text_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw data_error( "cannot open '" + path + "'" );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ojson read_json_file( std::string const& path ) { return parse_json_text( read_text_file( path ), path ); }

namespace detail
{

inline ojson const& member( ojson const& obj, char const* key, std::string const& where )
{
  if ( !obj.is_object() || !obj.contains( key ) )
  {
    throw data_error( where + ": missing field '" + key + "'" );
  }
  return obj.at( key );
}

inline std::vector<named_input> read_inputs( ojson const& list, std::string const& where, arrival_reader const& arrivals )
{
  if ( !list.is_array() )
  {
    throw data_error( where + ": expected an array of inputs" );
  }
  std::vector<named_input> inputs;
  for ( std::size_t i = 0; i < list.size(); ++i )
  {
    auto const at = where + "[" + std::to_string( i ) + "]";
    auto const& name = member( list[i], "name", at );
    if ( !name.is_string() )
    {
      throw data_error( at + ": name must be a string" );
    }
    inputs.push_back( { name.get<std::string>(), arrivals( member( list[i], "arrival", at ), at ) } );
  }
  return inputs;
}

inline std::vector<arrival_t> read_arrival_list( ojson const& list, std::string const& where,
                                                 arrival_reader const& arrivals )
{
  if ( !list.is_array() )
  {
    throw data_error( where + ": expected an array of arrival times" );
  }
  std::vector<arrival_t> out;
  for ( std::size_t i = 0; i < list.size(); ++i )
  {
    out.push_back( arrivals( list[i], where + "[" + std::to_string( i ) + "]" ) );
  }
  return out;
}

} // namespace detail

/*! \brief Reads {"polarity": "and-first"|"or-first", "symmetric": [...], "alternating": [...]}. */
inline aop_instance instance_from_json( ojson const& j, arrival_reader const& arrivals = {} )
{
  aop_instance inst;
  if ( !j.is_object() )
  {
    throw data_error( "instance: expected a JSON object" );
  }
  if ( j.contains( "polarity" ) )
  {
    auto const p = j.at( "polarity" ).is_string() ? j.at( "polarity" ).get<std::string>() : std::string{};
    if ( p == "and-first" )
    {
      inst.pol = polarity::and_first;
    }
    else if ( p == "or-first" )
    {
      inst.pol = polarity::or_first;
    }
    else
    {
      throw data_error( "instance: polarity must be \"and-first\" or \"or-first\"" );
    }
  }
  if ( j.contains( "symmetric" ) )
  {
    inst.symmetric = detail::read_inputs( j.at( "symmetric" ), "symmetric", arrivals );
  }
  inst.alternating = detail::read_inputs( detail::member( j, "alternating", "instance" ), "alternating", arrivals );
  try
  {
    inst.check();
  }
  catch ( std::invalid_argument const& e )
  {
    throw data_error( std::string( "instance: " ) + e.what() );
  }
  return inst;
}

inline ojson instance_to_json( aop_instance const& inst )
{
  ojson j;
  j["polarity"] = std::string( to_string( inst.pol ) );
  auto list = []( std::vector<named_input> const& inputs ) {
    ojson a = ojson::array();
    for ( auto const& in : inputs )
    {
      a.push_back( { { "name", in.name }, { "arrival", in.arrival } } );
    }
    return a;
  };
  j["symmetric"] = list( inst.symmetric );
  j["alternating"] = list( inst.alternating );
  return j;
}

/*! \brief Reads a generalized path: the inputs under "inputs" (or "alternating") and "ops" over '&' and '|'. */
inline generalized_instance generalized_from_json( ojson const& j, arrival_reader const& arrivals = {} )
{
  generalized_instance inst;
  if ( !j.is_object() )
  {
    throw data_error( "generalized instance: expected a JSON object" );
  }
  auto const key = j.contains( "inputs" ) ? "inputs" : "alternating";
  inst.inputs = detail::read_inputs( detail::member( j, key, "generalized instance" ), key, arrivals );
  auto const& ops = detail::member( j, "ops", "generalized instance" );
  if ( !ops.is_string() )
  {
    throw data_error( "generalized instance: ops must be a string over '&' and '|'" );
  }
  try
  {
    inst.ops = parse_ops( ops.get<std::string>() );
    inst.check();
  }
  catch ( std::invalid_argument const& e )
  {
    throw data_error( std::string( "generalized instance: " ) + e.what() );
  }
  return inst;
}

inline ojson generalized_to_json( generalized_instance const& inst )
{
  ojson j;
  ojson a = ojson::array();
  for ( auto const& in : inst.inputs )
  {
    a.push_back( { { "name", in.name }, { "arrival", in.arrival } } );
  }
  j["inputs"] = a;
  j["ops"] = ops_to_string( inst.ops );
  return j;
}

/*! \brief Reads {"width": r, "x_arrivals": [...], "y_arrivals": [...], "emit_sums": bool}. */
inline adder_spec adder_from_json( ojson const& j, arrival_reader const& arrivals = {} )
{
  adder_spec spec;
  auto const& width = detail::member( j, "width", "adder" );
  if ( !width.is_number_unsigned() || width.get<std::uint64_t>() == 0u || width.get<std::uint64_t>() > 4096u )
  {
    throw data_error( "adder: width must be an integer in [1, 4096]" );
  }
  spec.width = width.get<unsigned>();
  spec.x_arrivals = j.contains( "x_arrivals" ) ? detail::read_arrival_list( j.at( "x_arrivals" ), "x_arrivals", arrivals )
                                               : std::vector<arrival_t>( spec.width, 0u );
  spec.y_arrivals = j.contains( "y_arrivals" ) ? detail::read_arrival_list( j.at( "y_arrivals" ), "y_arrivals", arrivals )
                                               : std::vector<arrival_t>( spec.width, 0u );
  if ( j.contains( "emit_sums" ) )
  {
    if ( !j.at( "emit_sums" ).is_boolean() )
    {
      throw data_error( "adder: emit_sums must be a boolean" );
    }
    spec.emit_sums = j.at( "emit_sums" ).get<bool>();
  }
  try
  {
    spec.check();
  }
  catch ( std::invalid_argument const& e )
  {
    throw data_error( std::string( "adder: " ) + e.what() );
  }
  return spec;
}

inline ojson adder_to_json( adder_spec const& spec )
{
  return { { "width", spec.width },
           { "x_arrivals", spec.x_arrivals },
           { "y_arrivals", spec.y_arrivals },
           { "emit_sums", spec.emit_sums } };
}

/*! \brief Serializes a circuit as {"nodes": [...], "outputs": [...]}. */
inline ojson circuit_to_json( circuit const& c )
{
  ojson nodes = ojson::array();
  for ( node_id v = 0; v < c.size(); ++v )
  {
    ojson n;
    n["id"] = v;
    n["kind"] = std::string( to_string( c.kind( v ) ) );
    n["fanins"] = std::vector<node_id>( c.fanins( v ).begin(), c.fanins( v ).end() );
    if ( c.has_name( v ) )
    {
      n["name"] = std::string( c.name( v ) );
    }
    if ( c.has_arrival( v ) )
    {
      n["arrival"] = c.arrival( v );
    }
    nodes.push_back( std::move( n ) );
  }
  ojson j;
  j["nodes"] = std::move( nodes );
  j["outputs"] = std::vector<node_id>( c.outputs().begin(), c.outputs().end() );
  return j;
}

/*! \brief Loads a circuit without structural checks; node ids must be 0..n-1 in any order. */
inline circuit circuit_from_json_unchecked( ojson const& j, arrival_reader const& arrivals = {} )
{
  auto const& nodes = detail::member( j, "nodes", "circuit" );
  auto const& outputs = detail::member( j, "outputs", "circuit" );
  if ( !nodes.is_array() || !outputs.is_array() )
  {
    throw data_error( "circuit: nodes and outputs must be arrays" );
  }
  std::vector<raw_node> raw( nodes.size() );
  std::vector<bool> seen( nodes.size(), false );
  for ( std::size_t i = 0; i < nodes.size(); ++i )
  {
    auto const at = "nodes[" + std::to_string( i ) + "]";
    auto const& n = nodes[i];
    auto const& id = detail::member( n, "id", at );
    if ( !id.is_number_unsigned() || id.get<std::uint64_t>() >= nodes.size() || seen[id.get<std::size_t>()] )
    {
      throw data_error( at + ": ids must be distinct integers in [0, " + std::to_string( nodes.size() ) + ")" );
    }
    auto const idx = id.get<std::size_t>();
    seen[idx] = true;
    auto& r = raw[idx];
    auto const& kind = detail::member( n, "kind", at );
    auto const parsed = kind.is_string() ? parse_node_kind( kind.get<std::string>() ) : std::nullopt;
    if ( !parsed )
    {
      throw data_error( at + ": kind must be one of INPUT, AND2, OR2, BUF, XOR2" );
    }
    r.kind = *parsed;
    if ( n.contains( "fanins" ) )
    {
      for ( auto const& f : n.at( "fanins" ) )
      {
        if ( !f.is_number_unsigned() )
        {
          throw data_error( at + ": fanins must be non-negative integers" );
        }
        r.fanins.push_back( f.get<node_id>() );
      }
    }
    if ( n.contains( "name" ) && !n.at( "name" ).is_null() )
    {
      if ( !n.at( "name" ).is_string() )
      {
        throw data_error( at + ": name must be a string" );
      }
      r.name = n.at( "name" ).get<std::string>();
    }
    if ( n.contains( "arrival" ) && !n.at( "arrival" ).is_null() )
    {
      r.arrival = arrivals( n.at( "arrival" ), at );
    }
  }
  std::vector<node_id> outs;
  for ( auto const& o : outputs )
  {
    if ( !o.is_number_unsigned() )
    {
      throw data_error( "circuit: outputs must be non-negative integers" );
    }
    outs.push_back( o.get<node_id>() );
  }
  return circuit::from_raw( raw, std::move( outs ) );
}

/*! \brief Loads a circuit and rejects it with a data_error listing all violations if it is invalid. */
inline circuit circuit_from_json( ojson const& j, arrival_reader const& arrivals = {} )
{
  auto c = circuit_from_json_unchecked( j, arrivals );
  if ( auto const v = validate( c ); !v.empty() )
  {
    std::string msg = "invalid circuit:";
    for ( auto const& x : v )
    {
      msg += "\n  " + x.to_string();
    }
    throw data_error( msg );
  }
  return c;
}

inline ojson timing_to_json( timing_report const& t )
{
  ojson j;
  j["circuit_delay"] = t.circuit_delay;
  j["lower_bound"] = t.lower_bound;
  j["size"] = t.size;
  j["max_fanout"] = t.max_fanout;
  ojson per = ojson::object();
  for ( auto const& [name, d] : t.per_input_delay )
  {
    per[name] = d;
  }
  j["per_input_delay"] = std::move( per );
  return j;
}

inline ojson bounds_to_json( bound_report const& b )
{
  auto opt = []( auto const& v ) -> ojson {
    if ( !v )
    {
      return nullptr;
    }
    if constexpr ( std::is_same_v<std::decay_t<decltype( *v )>, long double> )
    {
      return static_cast<double>( *v );
    }
    else
    {
      return *v;
    }
  };
  ojson j;
  j["m"] = b.m;
  j["achieved_delay"] = b.achieved_delay;
  j["lower_bound"] = b.lower_bound;
  j["bound_plus7"] = opt( b.bound_plus7 );
  j["bound_4_3"] = opt( b.bound_4_3 );
  j["size"] = b.size;
  j["size_bound"] = opt( b.size_bound );
  j["max_fanout"] = b.max_fanout;
  j["fanout_bound"] = opt( b.fanout_bound );
  j["d"] = opt( b.d );
  j["gate_fanout_one"] = opt( b.gate_fanout_one );
  j["symmetric_fanout_one"] = opt( b.symmetric_fanout_one );
  j["alternating_fanout_within_d"] = opt( b.alternating_fanout_within_d );
  j["violations"] = b.violations;
  return j;
}

inline ojson verdict_to_json( equivalence_verdict const& v )
{
  ojson j;
  j["mode"] = v.mode == check_mode::exhaustive ? "exhaustive" : "random";
  if ( v.mode == check_mode::random )
  {
    j["seed"] = v.seed;
  }
  j["vectors"] = v.vectors;
  j["result"] = v.equivalent ? "equivalent" : "counterexample";
  if ( !v.equivalent )
  {
    ojson cex = ojson::object();
    for ( auto const& [name, bit] : v.counterexample )
    {
      cex[name] = bit ? 1 : 0;
    }
    j["counterexample"] = std::move( cex );
    j["output_index"] = v.output_index;
  }
  return j;
}

} // namespace aopsynth
