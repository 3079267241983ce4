/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file dot.hpp
  \brief Graphviz export of circuits.
*/

#pragma once

#include "../circuit.hpp"

#include <sstream>
#include <string>
#include <string_view>

namespace aopsynth
{

namespace detail
{

inline std::string dot_escape( std::string_view text )
{
  std::string out;
  for ( auto ch : text )
  {
    if ( ch == '"' || ch == '\\' )
    {
      out.push_back( '\\' );
    }
    out.push_back( ch );
  }
  return out;
}

} // namespace detail

/*! \brief One graph node per circuit node labeled with kind (and name/arrival for inputs); edges go fanin -> node. */
inline std::string write_dot( circuit const& c, std::string const& graph_name = "aopsynth" )
{
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n  rankdir=BT;\n";
  for ( node_id v = 0; v < c.size(); ++v )
  {
    os << "  n" << v << " [label=\"" << to_string( c.kind( v ) );
    if ( c.kind( v ) == node_kind::input )
    {
      os << "\\n" << detail::dot_escape( c.name( v ) ) << " @" << c.arrival( v ) << "\", shape=box";
    }
    else
    {
      os << "\"";
    }
    os << "];\n";
  }
  for ( node_id v = 0; v < c.size(); ++v )
  {
    for ( auto f : c.fanins( v ) )
    {
      os << "  n" << f << " -> n" << v << ";\n";
    }
  }
  for ( std::size_t k = 0; k < c.outputs().size(); ++k )
  {
    os << "  out" << k << " [label=\"out" << k << "\", shape=plaintext];\n";
    os << "  n" << c.outputs()[k] << " -> out" << k << ";\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace aopsynth
