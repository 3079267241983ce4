/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file blif.hpp
  \brief BLIF writer and reader for circuits of two-input gates.

  Each gate becomes one `.names` block with its single-output cover. Input
  arrival times are stored as `.input_arrival <name> <rise> <fall>` lines.
*/

#pragma once

#include "../circuit.hpp"
#include "json_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aopsynth
{

namespace detail
{

/*! \brief Shortest prefix of the form _..._base that no input name starts with. */
inline std::string fresh_prefix( circuit const& c, std::string base )
{
  for ( ;; )
  {
    bool clash = false;
    for ( auto i : c.inputs() )
    {
      clash = clash || c.name( i ).starts_with( base );
    }
    if ( !clash )
    {
      return base;
    }
    base.insert( base.begin(), '_' );
  }
}

inline std::string_view cover_of( node_kind kind )
{
  switch ( kind )
  {
  case node_kind::and2:
    return "11 1\n";
  case node_kind::or2:
    return "1- 1\n-1 1\n";
  case node_kind::xor2:
    return "10 1\n01 1\n";
  case node_kind::buf:
    return "1 1\n";
  default:
    return "";
  }
}

} // namespace detail

/*! \brief Writes `c` as BLIF; outputs are named out0, out1, ... */
inline std::string write_blif( circuit const& c, std::string_view model = "aopsynth" )
{
  require_valid( c );
  auto const gate_prefix = detail::fresh_prefix( c, "n" );
  auto const out_prefix = detail::fresh_prefix( c, "out" );

  std::vector<std::string> signal( c.size() );
  for ( node_id v = 0; v < c.size(); ++v )
  {
    signal[v] = c.kind( v ) == node_kind::input ? std::string( c.name( v ) ) : gate_prefix + std::to_string( v );
  }
  // a gate driving exactly the first output that references it is named after that output
  std::vector<std::optional<std::size_t>> named_output( c.size() );
  std::vector<bool> aliased( c.outputs().size(), false );
  for ( std::size_t k = 0; k < c.outputs().size(); ++k )
  {
    auto const o = c.outputs()[k];
    if ( c.kind( o ) != node_kind::input && !named_output[o] )
    {
      named_output[o] = k;
      aliased[k] = true;
      signal[o] = out_prefix + std::to_string( k );
    }
  }

  std::ostringstream os;
  os << ".model " << model << "\n.inputs";
  for ( auto i : c.inputs() )
  {
    os << ' ' << c.name( i );
  }
  os << "\n.outputs";
  for ( std::size_t k = 0; k < c.outputs().size(); ++k )
  {
    os << ' ' << out_prefix << k;
  }
  os << '\n';
  for ( auto i : c.inputs() )
  {
    os << ".input_arrival " << c.name( i ) << ' ' << c.arrival( i ) << ' ' << c.arrival( i ) << '\n';
  }
  for ( node_id v = 0; v < c.size(); ++v )
  {
    if ( c.kind( v ) == node_kind::input )
    {
      continue;
    }
    os << ".names";
    for ( auto f : c.fanins( v ) )
    {
      os << ' ' << signal[f];
    }
    os << ' ' << signal[v] << '\n' << detail::cover_of( c.kind( v ) );
  }
  for ( std::size_t k = 0; k < c.outputs().size(); ++k )
  {
    if ( !aliased[k] )
    {
      os << ".names " << signal[c.outputs()[k]] << ' ' << out_prefix << k << "\n1 1\n";
    }
  }
  os << ".end\n";
  return os.str();
}

/*! \brief Parses BLIF written by `write_blif` or by other tools restricted to the supported covers.
 *
 * Supported blocks: one-input identity (BUF) and two-input AND, OR and XOR
 * covers. An identity block whose output is a primary output not used
 * elsewhere is treated as an alias. Missing arrival times default to 0.
 * Throws data_error on anything else.
 */
inline circuit read_blif( std::string const& text )
{
  // join continuation lines and strip comments
  std::vector<std::vector<std::string>> lines;
  {
    std::istringstream is( text );
    std::string line, pending;
    while ( std::getline( is, line ) )
    {
      if ( auto hash = line.find( '#' ); hash != std::string::npos )
      {
        line.erase( hash );
      }
      while ( !line.empty() && std::isspace( static_cast<unsigned char>( line.back() ) ) )
      {
        line.pop_back();
      }
      if ( !line.empty() && line.back() == '\\' )
      {
        line.pop_back();
        pending += line + ' ';
        continue;
      }
      line = pending + line;
      pending.clear();
      std::istringstream ls( line );
      std::vector<std::string> tokens;
      for ( std::string tok; ls >> tok; )
      {
        tokens.push_back( tok );
      }
      if ( !tokens.empty() )
      {
        lines.push_back( std::move( tokens ) );
      }
    }
  }

  struct block
  {
    std::vector<std::string> ins;
    std::string out;
    std::set<std::string> cubes;
  };
  std::vector<std::string> inputs, outputs;
  std::map<std::string, arrival_t> arrivals;
  std::vector<block> blocks;
  bool in_block = false;

  for ( auto const& tokens : lines )
  {
    auto const& head = tokens.front();
    if ( head[0] == '.' )
    {
      in_block = false;
      if ( head == ".model" || head == ".end" )
      {
        continue;
      }
      if ( head == ".inputs" )
      {
        inputs.insert( inputs.end(), tokens.begin() + 1, tokens.end() );
      }
      else if ( head == ".outputs" )
      {
        outputs.insert( outputs.end(), tokens.begin() + 1, tokens.end() );
      }
      else if ( head == ".input_arrival" )
      {
        if ( tokens.size() < 3u )
        {
          throw data_error( "blif: malformed .input_arrival" );
        }
        try
        {
          arrivals[tokens[1]] = ceil_arrival( parse_rational( tokens[2] ) );
        }
        catch ( std::exception const& e )
        {
          throw data_error( std::string( "blif: bad arrival for '" ) + tokens[1] + "': " + e.what() );
        }
      }
      else if ( head == ".names" )
      {
        if ( tokens.size() < 2u )
        {
          throw data_error( "blif: .names without signals" );
        }
        block b;
        b.ins.assign( tokens.begin() + 1, tokens.end() - 1 );
        b.out = tokens.back();
        blocks.push_back( std::move( b ) );
        in_block = true;
      }
      else
      {
        throw data_error( "blif: unsupported directive " + head );
      }
      continue;
    }
    if ( !in_block )
    {
      throw data_error( "blif: cover line outside a .names block" );
    }
    auto& b = blocks.back();
    if ( tokens.size() != 2u || tokens[0].size() != b.ins.size() || tokens[1] != "1" )
    {
      throw data_error( "blif: unsupported cover line in block driving '" + b.out + "'" );
    }
    b.cubes.insert( tokens[0] );
  }

  auto const classify = [&]( block const& b ) -> node_kind {
    auto const& cubes = b.cubes;
    if ( b.ins.size() == 1u && cubes == std::set<std::string>{ "1" } )
    {
      return node_kind::buf;
    }
    if ( b.ins.size() == 2u )
    {
      if ( cubes == std::set<std::string>{ "11" } )
      {
        return node_kind::and2;
      }
      if ( cubes == std::set<std::string>{ "1-", "-1" } || cubes == std::set<std::string>{ "01", "10", "11" } ||
           cubes == std::set<std::string>{ "1-", "01" } || cubes == std::set<std::string>{ "-1", "10" } )
      {
        return node_kind::or2;
      }
      if ( cubes == std::set<std::string>{ "01", "10" } )
      {
        return node_kind::xor2;
      }
    }
    throw data_error( "blif: block driving '" + b.out + "' is not a supported gate" );
  };

  std::unordered_map<std::string, std::size_t> driver;
  for ( std::size_t i = 0; i < blocks.size(); ++i )
  {
    if ( !driver.emplace( blocks[i].out, i ).second )
    {
      throw data_error( "blif: signal '" + blocks[i].out + "' driven twice" );
    }
  }
  std::set<std::string> used_as_fanin;
  for ( auto const& b : blocks )
  {
    used_as_fanin.insert( b.ins.begin(), b.ins.end() );
  }
  std::set<std::string> const output_set( outputs.begin(), outputs.end() );

  circuit c;
  std::unordered_map<std::string, node_id> node_of;
  for ( auto const& name : inputs )
  {
    if ( driver.contains( name ) )
    {
      throw data_error( "blif: input '" + name + "' is also driven by a block" );
    }
    auto it = arrivals.find( name );
    try
    {
      node_of[name] = c.add_input( name, it == arrivals.end() ? 0u : it->second );
    }
    catch ( circuit_error const& e )
    {
      throw data_error( std::string( "blif: " ) + e.what() );
    }
  }

  // emit blocks in dependency order (iterative DFS, detecting cycles)
  std::vector<std::uint8_t> state( blocks.size(), 0u );
  auto const resolve = [&]( std::string const& sig ) -> node_id {
    auto it = node_of.find( sig );
    if ( it == node_of.end() )
    {
      throw data_error( "blif: undriven signal '" + sig + "'" );
    }
    return it->second;
  };
  for ( std::size_t root = 0; root < blocks.size(); ++root )
  {
    if ( state[root] != 0u )
    {
      continue;
    }
    std::vector<std::pair<std::size_t, std::size_t>> stack{ { root, 0u } };
    state[root] = 1u;
    while ( !stack.empty() )
    {
      auto& [bi, next] = stack.back();
      auto const& b = blocks[bi];
      if ( next < b.ins.size() )
      {
        auto const& sig = b.ins[next++];
        if ( node_of.contains( sig ) )
        {
          continue;
        }
        auto it = driver.find( sig );
        if ( it == driver.end() )
        {
          throw data_error( "blif: undriven signal '" + sig + "'" );
        }
        if ( state[it->second] == 1u )
        {
          throw data_error( "blif: combinational cycle through '" + sig + "'" );
        }
        if ( state[it->second] == 0u )
        {
          state[it->second] = 1u;
          stack.emplace_back( it->second, 0u );
        }
        continue;
      }
      auto const kind = classify( b );
      if ( kind == node_kind::buf && output_set.contains( b.out ) && !used_as_fanin.contains( b.out ) )
      {
        node_of[b.out] = resolve( b.ins[0] );
      }
      else
      {
        std::vector<node_id> fis;
        for ( auto const& sig : b.ins )
        {
          fis.push_back( resolve( sig ) );
        }
        node_of[b.out] = c.add_node( kind, fis );
      }
      state[bi] = 2u;
      stack.pop_back();
    }
  }
  for ( auto const& o : outputs )
  {
    c.add_output( resolve( o ) );
  }
  if ( auto const v = validate( c ); !v.empty() )
  {
    throw data_error( "blif: invalid circuit: " + v.front().to_string() );
  }
  return c;
}

} // namespace aopsynth
