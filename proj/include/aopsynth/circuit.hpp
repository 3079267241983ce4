/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file circuit.hpp
  \brief Append-only netlist of two-input gates with timing analysis and simulation.
*/

#pragma once

#include "numeric.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aopsynth
{

enum class node_kind : std::uint8_t
{
  input,
  and2,
  or2,
  buf,
  xor2
};

using node_id = std::uint32_t;

constexpr unsigned arity( node_kind kind )
{
  switch ( kind )
  {
  case node_kind::input:
    return 0u;
  case node_kind::buf:
    return 1u;
  default:
    return 2u;
  }
}

constexpr std::string_view to_string( node_kind kind )
{
  switch ( kind )
  {
  case node_kind::input:
    return "INPUT";
  case node_kind::and2:
    return "AND2";
  case node_kind::or2:
    return "OR2";
  case node_kind::buf:
    return "BUF";
  case node_kind::xor2:
    return "XOR2";
  }
  return "?";
}

inline std::optional<node_kind> parse_node_kind( std::string_view text )
{
  for ( auto k : { node_kind::input, node_kind::and2, node_kind::or2, node_kind::buf, node_kind::xor2 } )
  {
    if ( text == to_string( k ) )
    {
      return k;
    }
  }
  return std::nullopt;
}

/*! \brief Swaps AND2 and OR2; all other kinds are self-dual here. */
constexpr node_kind dual( node_kind kind )
{
  return kind == node_kind::and2 ? node_kind::or2 : kind == node_kind::or2 ? node_kind::and2 : kind;
}

class circuit_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Unchecked node description, used when loading circuits from files. */
struct raw_node
{
  node_kind kind{ node_kind::input };
  std::vector<node_id> fanins;
  std::optional<std::string> name;
  std::optional<arrival_t> arrival;
};

/*! \brief A combinational netlist over INPUT, AND2, OR2, BUF and XOR2 nodes.
 *
 * Nodes live in an arena with dense ids. Nodes built through `add_node` and
 * friends may only reference existing ids, so circuits constructed that way
 * are acyclic by construction. Circuits loaded with `from_raw` are not
 * checked; run `validate` on them.
 */
class circuit
{
public:
  node_id add_input( std::string name, arrival_t arrival )
  {
    std::array<node_id, 0> none{};
    return add_node( node_kind::input, none, std::move( name ), arrival );
  }

  node_id add_gate( node_kind kind, node_id a, node_id b )
  {
    std::array<node_id, 2> fanins{ a, b };
    return add_node( kind, fanins );
  }

  node_id add_buf( node_id a )
  {
    std::array<node_id, 1> fanins{ a };
    return add_node( node_kind::buf, fanins );
  }

  /*! \brief Appends a node and returns its id.
   *
   * Inputs must carry a unique name and an arrival time; gates must not
   * carry an arrival time. Throws circuit_error on any violated precondition.
   */
  node_id add_node( node_kind kind, std::span<const node_id> fanins, std::optional<std::string> name = std::nullopt,
                    std::optional<arrival_t> arrival = std::nullopt )
  {
    if ( fanins.size() != arity( kind ) )
    {
      throw circuit_error( "arity mismatch: " + std::string( to_string( kind ) ) + " expects " +
                           std::to_string( arity( kind ) ) + " fanins, got " + std::to_string( fanins.size() ) );
    }
    for ( auto f : fanins )
    {
      if ( f >= nodes_.size() )
      {
        throw circuit_error( "unknown fanin id " + std::to_string( f ) );
      }
    }
    if ( kind == node_kind::input )
    {
      if ( !name || name->empty() )
      {
        throw circuit_error( "input without a name" );
      }
      if ( !arrival )
      {
        throw circuit_error( "input '" + *name + "' without an arrival time" );
      }
      if ( input_index_.contains( *name ) )
      {
        throw circuit_error( "duplicate input name '" + *name + "'" );
      }
    }
    else if ( arrival )
    {
      throw circuit_error( "arrival on non-input" );
    }
    return append( kind, fanins, std::move( name ), arrival );
  }

  void add_output( node_id n )
  {
    if ( n >= nodes_.size() )
    {
      throw circuit_error( "output references unknown node " + std::to_string( n ) );
    }
    outputs_.push_back( n );
  }

  /*! \brief Builds a circuit verbatim, without any checks. */
  static circuit from_raw( std::span<const raw_node> nodes, std::vector<node_id> outputs )
  {
    circuit c;
    for ( auto const& n : nodes )
    {
      c.append( n.kind, n.fanins, n.name, n.arrival );
    }
    c.outputs_ = std::move( outputs );
    return c;
  }

  std::size_t size() const { return nodes_.size(); }

  /*! \brief Number of gates, i.e. all nodes except inputs. */
  std::size_t num_gates() const { return nodes_.size() - inputs_.size(); }

  std::size_t num_inputs() const { return inputs_.size(); }

  std::span<const node_id> inputs() const { return inputs_; }

  std::span<const node_id> outputs() const { return outputs_; }

  node_kind kind( node_id n ) const { return nodes_[n].kind; }

  std::span<const node_id> fanins( node_id n ) const
  {
    auto const& rec = nodes_[n];
    return std::span<const node_id>( fanin_pool_ ).subspan( rec.fanin_begin, rec.fanin_count );
  }

  bool has_name( node_id n ) const { return nodes_[n].name_slot != no_slot; }

  std::string_view name( node_id n ) const
  {
    return has_name( n ) ? std::string_view( names_[nodes_[n].name_slot] ) : std::string_view{};
  }

  bool has_arrival( node_id n ) const { return nodes_[n].has_arrival; }

  arrival_t arrival( node_id n ) const { return nodes_[n].arrival; }

  /*! \brief Overrides the arrival time of an input. */
  void set_arrival( node_id n, arrival_t a )
  {
    if ( nodes_[n].kind != node_kind::input )
    {
      throw circuit_error( "arrival on non-input" );
    }
    nodes_[n].arrival = a;
    nodes_[n].has_arrival = true;
  }

  /*! \brief Replaces the kind of a node by another kind of the same arity. */
  void set_kind( node_id n, node_kind k )
  {
    if ( arity( k ) != nodes_[n].fanin_count || k == node_kind::input || nodes_[n].kind == node_kind::input )
    {
      throw circuit_error( "arity mismatch" );
    }
    nodes_[n].kind = k;
  }

  std::optional<node_id> find_input( std::string_view name ) const
  {
    if ( auto it = input_index_.find( std::string( name ) ); it != input_index_.end() )
    {
      return it->second;
    }
    return std::nullopt;
  }

  /*! \brief Number of fanin references to each node; output ports are not counted. */
  std::vector<std::uint32_t> fanout_counts() const
  {
    std::vector<std::uint32_t> counts( nodes_.size(), 0u );
    for ( auto f : fanin_pool_ )
    {
      if ( f < counts.size() )
      {
        ++counts[f];
      }
    }
    return counts;
  }

  std::vector<std::string> input_names() const
  {
    std::vector<std::string> names;
    names.reserve( inputs_.size() );
    for ( auto i : inputs_ )
    {
      names.emplace_back( name( i ) );
    }
    return names;
  }

private:
  static constexpr std::uint32_t no_slot = ~std::uint32_t{ 0 };

  struct node_rec
  {
    node_kind kind;
    bool has_arrival;
    std::uint32_t fanin_begin;
    std::uint32_t fanin_count;
    arrival_t arrival;
    std::uint32_t name_slot;
  };

  node_id append( node_kind kind, std::span<const node_id> fanins, std::optional<std::string> name,
                  std::optional<arrival_t> arrival )
  {
    auto const id = static_cast<node_id>( nodes_.size() );
    node_rec rec{ kind, arrival.has_value(), static_cast<std::uint32_t>( fanin_pool_.size() ),
                  static_cast<std::uint32_t>( fanins.size() ), arrival.value_or( 0u ), no_slot };
    fanin_pool_.insert( fanin_pool_.end(), fanins.begin(), fanins.end() );
    if ( name )
    {
      rec.name_slot = static_cast<std::uint32_t>( names_.size() );
      if ( kind == node_kind::input )
      {
        input_index_.try_emplace( *name, id );
      }
      names_.push_back( std::move( *name ) );
    }
    if ( kind == node_kind::input )
    {
      inputs_.push_back( id );
    }
    nodes_.push_back( rec );
    return id;
  }

  std::vector<node_rec> nodes_;
  std::vector<node_id> fanin_pool_;
  std::vector<std::string> names_;
  std::vector<node_id> inputs_;
  std::vector<node_id> outputs_;
  std::unordered_map<std::string, node_id> input_index_;
};

/*! \brief Kinds of structural problems reported by `validate`. */
enum class violation_kind : std::uint8_t
{
  arity_mismatch,
  dangling_fanin,
  cycle,
  forward_reference,
  dead_node,
  missing_arrival,
  arrival_on_gate,
  missing_name,
  duplicate_name,
  no_outputs,
  dangling_output
};

constexpr std::string_view to_string( violation_kind kind )
{
  switch ( kind )
  {
  case violation_kind::arity_mismatch:
    return "arity mismatch";
  case violation_kind::dangling_fanin:
    return "dangling fanin";
  case violation_kind::cycle:
    return "cycle";
  case violation_kind::forward_reference:
    return "forward reference";
  case violation_kind::dead_node:
    return "dead node";
  case violation_kind::missing_arrival:
    return "missing arrival";
  case violation_kind::arrival_on_gate:
    return "arrival on non-input";
  case violation_kind::missing_name:
    return "missing input name";
  case violation_kind::duplicate_name:
    return "duplicate input name";
  case violation_kind::no_outputs:
    return "no outputs";
  case violation_kind::dangling_output:
    return "dangling output";
  }
  return "?";
}

struct violation
{
  violation_kind kind;
  node_id node;

  std::string to_string() const
  {
    return std::string( aopsynth::to_string( kind ) ) + " at node " + std::to_string( node );
  }
};

/*! \brief Returns every invariant violation of `c`; an empty list means the circuit is valid. */
inline std::vector<violation> validate( circuit const& c )
{
  std::vector<violation> found;
  auto const n = static_cast<node_id>( c.size() );

  if ( c.outputs().empty() )
  {
    found.push_back( { violation_kind::no_outputs, 0u } );
  }
  for ( auto o : c.outputs() )
  {
    if ( o >= n )
    {
      found.push_back( { violation_kind::dangling_output, o } );
    }
  }

  std::unordered_map<std::string_view, node_id> seen_names;
  for ( node_id v = 0; v < n; ++v )
  {
    auto const kind = c.kind( v );
    if ( c.fanins( v ).size() != arity( kind ) )
    {
      found.push_back( { violation_kind::arity_mismatch, v } );
    }
    for ( auto f : c.fanins( v ) )
    {
      if ( f >= n )
      {
        found.push_back( { violation_kind::dangling_fanin, v } );
      }
      else if ( f > v )
      {
        found.push_back( { violation_kind::forward_reference, v } );
      }
    }
    if ( kind == node_kind::input )
    {
      if ( !c.has_arrival( v ) )
      {
        found.push_back( { violation_kind::missing_arrival, v } );
      }
      if ( !c.has_name( v ) || c.name( v ).empty() )
      {
        found.push_back( { violation_kind::missing_name, v } );
      }
      else if ( !seen_names.emplace( c.name( v ), v ).second )
      {
        found.push_back( { violation_kind::duplicate_name, v } );
      }
    }
    else if ( c.has_arrival( v ) )
    {
      found.push_back( { violation_kind::arrival_on_gate, v } );
    }
  }

  // cycles: iterative DFS along fanin edges, a gray fanin closes a cycle
  enum class color : std::uint8_t
  {
    white,
    gray,
    black
  };
  std::vector<color> marks( n, color::white );
  std::vector<std::pair<node_id, std::size_t>> stack;
  for ( node_id root = 0; root < n; ++root )
  {
    if ( marks[root] != color::white )
    {
      continue;
    }
    stack.emplace_back( root, 0u );
    marks[root] = color::gray;
    while ( !stack.empty() )
    {
      auto& [v, next] = stack.back();
      auto const fis = c.fanins( v );
      if ( next == fis.size() )
      {
        marks[v] = color::black;
        stack.pop_back();
        continue;
      }
      auto const f = fis[next++];
      if ( f >= n )
      {
        continue;
      }
      if ( marks[f] == color::gray )
      {
        found.push_back( { violation_kind::cycle, v } );
      }
      else if ( marks[f] == color::white )
      {
        marks[f] = color::gray;
        stack.emplace_back( f, 0u );
      }
    }
  }

  // dead nodes: not reachable backwards from any output
  std::vector<bool> live( n, false );
  std::vector<node_id> work;
  for ( auto o : c.outputs() )
  {
    if ( o < n && !live[o] )
    {
      live[o] = true;
      work.push_back( o );
    }
  }
  while ( !work.empty() )
  {
    auto const v = work.back();
    work.pop_back();
    for ( auto f : c.fanins( v ) )
    {
      if ( f < n && !live[f] )
      {
        live[f] = true;
        work.push_back( f );
      }
    }
  }
  for ( node_id v = 0; v < n; ++v )
  {
    if ( !live[v] )
    {
      found.push_back( { violation_kind::dead_node, v } );
    }
  }
  return found;
}

inline void require_valid( circuit const& c )
{
  if ( auto v = validate( c ); !v.empty() )
  {
    throw circuit_error( "invalid circuit: " + v.front().to_string() );
  }
}

/*! \brief Timing, size and fanout summary of a circuit. */
struct timing_report
{
  std::map<std::string, delay_t> per_input_delay;
  delay_t circuit_delay{ 0 };
  std::size_t size{ 0 };
  std::size_t max_fanout{ 0 };
  std::uint64_t lower_bound{ 0 };
};

/*! \brief Arrival-time-aware delay of every node, in a single pass over the arena. */
inline std::vector<delay_t> node_delays( circuit const& c )
{
  std::vector<delay_t> delay( c.size(), 0u );
  for ( node_id v = 0; v < c.size(); ++v )
  {
    if ( c.kind( v ) == node_kind::input )
    {
      delay[v] = c.arrival( v );
      continue;
    }
    delay_t worst = 0;
    for ( auto f : c.fanins( v ) )
    {
      worst = std::max( worst, delay[f] );
    }
    delay[v] = worst + 1u;
  }
  return delay;
}

/*! \brief Longest-path timing analysis.
 *
 * The delay of input x is a(x) plus the maximum number of gates on any path
 * from x to an output; the circuit delay is the maximum over all inputs.
 * BUF and XOR2 count as one gate each. The lower bound is ceil(log2 W) with
 * W the sum of 2^a(x) over all inputs. Throws circuit_error on invalid circuits.
 */
inline timing_report compute_timing( circuit const& c )
{
  require_valid( c );
  timing_report r;

  auto const forward = node_delays( c );
  for ( auto o : c.outputs() )
  {
    r.circuit_delay = std::max( r.circuit_delay, forward[o] );
  }

  // remaining gate count from each node to the farthest output
  std::vector<delay_t> depth_to_out( c.size(), 0u );
  std::vector<bool> reaches( c.size(), false );
  for ( auto o : c.outputs() )
  {
    reaches[o] = true;
  }
  for ( auto v = static_cast<std::int64_t>( c.size() ) - 1; v >= 0; --v )
  {
    auto const id = static_cast<node_id>( v );
    if ( !reaches[id] || c.kind( id ) == node_kind::input )
    {
      continue;
    }
    for ( auto f : c.fanins( id ) )
    {
      depth_to_out[f] = std::max( depth_to_out[f], depth_to_out[id] + 1u );
      reaches[f] = true;
    }
  }

  weight w = 0;
  for ( auto i : c.inputs() )
  {
    r.per_input_delay.emplace( std::string( c.name( i ) ), c.arrival( i ) + depth_to_out[i] );
    w += weight_of( c.arrival( i ) );
  }
  r.lower_bound = c.num_inputs() > 0 ? ceil_log2( w ) : 0u;
  r.size = c.num_gates();
  auto const fanouts = c.fanout_counts();
  r.max_fanout = fanouts.empty() ? 0u : *std::max_element( fanouts.begin(), fanouts.end() );
  return r;
}

/*! \brief Bit-parallel simulator; each 64-bit word carries 64 independent assignments.
 *
 * Input words are given in the order of `circuit::inputs()`.
 */
class packed_simulator
{
public:
  explicit packed_simulator( circuit const& c ) : c_( c ), values_( c.size(), 0u ), outputs_( c.outputs().size(), 0u ) {}

  std::span<const std::uint64_t> run( std::span<const std::uint64_t> input_words )
  {
    if ( input_words.size() != c_.num_inputs() )
    {
      throw circuit_error( "simulation needs one word per input" );
    }
    std::size_t next_input = 0;
    for ( node_id v = 0; v < c_.size(); ++v )
    {
      auto const fis = c_.fanins( v );
      switch ( c_.kind( v ) )
      {
      case node_kind::input:
        values_[v] = input_words[next_input++];
        break;
      case node_kind::and2:
        values_[v] = values_[fis[0]] & values_[fis[1]];
        break;
      case node_kind::or2:
        values_[v] = values_[fis[0]] | values_[fis[1]];
        break;
      case node_kind::xor2:
        values_[v] = values_[fis[0]] ^ values_[fis[1]];
        break;
      case node_kind::buf:
        values_[v] = values_[fis[0]];
        break;
      }
    }
    auto const outs = c_.outputs();
    for ( std::size_t i = 0; i < outs.size(); ++i )
    {
      outputs_[i] = values_[outs[i]];
    }
    return outputs_;
  }

  std::span<const std::uint64_t> node_values() const { return values_; }

private:
  circuit const& c_;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint64_t> outputs_;
};

/*! \brief Evaluates all outputs for one assignment given by input name.
 *
 * Throws circuit_error if an input has no assigned value.
 */
inline std::vector<bool> evaluate( circuit const& c, std::map<std::string, bool, std::less<>> const& assignment )
{
  std::vector<std::uint64_t> words;
  words.reserve( c.num_inputs() );
  for ( auto i : c.inputs() )
  {
    auto it = assignment.find( c.name( i ) );
    if ( it == assignment.end() )
    {
      throw circuit_error( "missing assignment for input '" + std::string( c.name( i ) ) + "'" );
    }
    words.push_back( it->second ? 1u : 0u );
  }
  packed_simulator sim( c );
  auto const outs = sim.run( words );
  std::vector<bool> bits;
  bits.reserve( outs.size() );
  for ( auto w : outs )
  {
    bits.push_back( ( w & 1u ) != 0u );
  }
  return bits;
}

} // namespace aopsynth
