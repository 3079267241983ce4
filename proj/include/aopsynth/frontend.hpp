/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file frontend.hpp
  \brief Synthesis entry points: arrival normalization, plain and generalized
         AND-OR paths, and carry-chain adders.
*/

#pragma once

#include "aop_core.hpp"
#include "circuit.hpp"
#include "numeric.hpp"
#include "symtree.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aopsynth
{

/*! \brief Arrival times shifted down so that the total weight is at most twice the input count. */
struct normalize_result
{
  std::vector<arrival_t> shifted_arrivals;
  std::uint64_t shift{ 0 };
  weight normalized_weight{ 0 };
};

/*! \brief Shifts arrival times by the smallest k >= 0 with W <= m 2^k, clamping at zero.
 *
 * Equivalently k = max(0, ceil(log2 W - log2 m)), computed exactly. The
 * shifted weight is at most 2m, and a circuit that has delay D for the
 * shifted times has delay at most D + k for the original ones.
 */
inline normalize_result normalize_arrivals( std::span<const arrival_t> arrivals )
{
  if ( arrivals.empty() )
  {
    throw std::invalid_argument( "normalize_arrivals of an empty list" );
  }
  auto const w = total_weight( arrivals );
  weight const m = arrivals.size();
  normalize_result r;
  if ( w > m )
  {
    auto const wl = floor_log2( w ), ml = floor_log2( m );
    r.shift = wl > ml + 1u ? wl - ml - 1u : 0u;
    while ( ( m << static_cast<unsigned>( r.shift ) ) < w )
    {
      ++r.shift;
    }
  }
  r.shifted_arrivals.reserve( arrivals.size() );
  for ( auto a : arrivals )
  {
    auto const shifted = a > r.shift ? static_cast<arrival_t>( a - r.shift ) : arrival_t{ 0 };
    r.shifted_arrivals.push_back( shifted );
    r.normalized_weight += weight_of( shifted );
  }
  return r;
}

/*! \brief A synthesized circuit with its timing under the original arrival times. */
struct synth_result
{
  circuit circ;
  timing_report timing;
  /*! \brief Delay target chosen for the (possibly normalized) core instance. */
  std::uint64_t d{ 0 };
  /*! \brief Arrival shift applied before construction. */
  std::uint64_t shift{ 0 };
  construct_stats stats;
};

namespace detail
{

/*! \brief Normalizes the leaf arrivals in place (if enabled and m >= 3) and returns the shift. */
inline std::uint64_t normalize_leaves( std::vector<leaf>& s, std::vector<leaf>& t, synth_config const& config )
{
  if ( !config.normalize || t.size() <= 2u )
  {
    return 0u;
  }
  std::vector<arrival_t> arrivals;
  arrivals.reserve( s.size() + t.size() );
  for ( auto const* list : { &s, &t } )
  {
    for ( auto const& l : *list )
    {
      arrivals.push_back( l.arrival );
    }
  }
  auto const norm = normalize_arrivals( arrivals );
  std::size_t i = 0;
  for ( auto* list : { &s, &t } )
  {
    for ( auto& l : *list )
    {
      l.arrival = norm.shifted_arrivals[i++];
    }
  }
  return norm.shift;
}

} // namespace detail

/*! \brief Synthesizes an extended AND-OR path.
 *
 * With normalization enabled (and m >= 3) the construction runs on shifted
 * arrival times; the returned timing always uses the original ones. For
 * m <= 2 the result is a delay-optimal symmetric tree.
 */
inline synth_result synth( aop_instance const& inst, synth_config const& config = {} )
{
  inst.check();
  synth_result r;
  std::vector<leaf> s, t;
  for ( auto const& in : inst.symmetric )
  {
    s.push_back( { r.circ.add_input( in.name, in.arrival ), in.arrival } );
  }
  for ( auto const& in : inst.alternating )
  {
    t.push_back( { r.circ.add_input( in.name, in.arrival ), in.arrival } );
  }
  r.shift = detail::normalize_leaves( s, t, config );
  auto const root = construct_into( r.circ, s, t, inst.pol, config, &r.stats );
  r.circ.add_output( root.node );
  r.d = r.stats.d != 0u ? r.stats.d : root.arrival;
  r.timing = compute_timing( r.circ );
  return r;
}

/*! \brief A path t0 o1 (t1 o2 (... o{m-1} t{m-1})) with arbitrary AND/OR operators. */
struct generalized_instance
{
  std::vector<named_input> inputs;
  /*! \brief Operators o1 .. o{m-1}, each AND2 or OR2. */
  std::vector<node_kind> ops;

  void check() const
  {
    if ( inputs.size() < 2u )
    {
      throw std::invalid_argument( "a generalized path needs at least two inputs" );
    }
    if ( ops.size() + 1u != inputs.size() )
    {
      throw std::invalid_argument( "a generalized path on " + std::to_string( inputs.size() ) + " inputs needs " +
                                   std::to_string( inputs.size() - 1u ) + " operators, got " +
                                   std::to_string( ops.size() ) );
    }
    for ( auto op : ops )
    {
      if ( op != node_kind::and2 && op != node_kind::or2 )
      {
        throw std::invalid_argument( "generalized path operators must be AND2 or OR2" );
      }
    }
    aop_instance probe;
    probe.alternating = inputs;
    probe.check();
  }

  /*! \brief Number of positions where the operator kind changes. */
  std::size_t changes() const
  {
    std::size_t c = 0;
    for ( std::size_t i = 1; i < ops.size(); ++i )
    {
      c += ops[i] != ops[i - 1u] ? 1u : 0u;
    }
    return c;
  }

  /*! \brief Maximal groups of consecutive inputs feeding the same operator kind, as [begin, end) pairs. */
  std::vector<std::pair<std::size_t, std::size_t>> groups() const
  {
    std::vector<std::pair<std::size_t, std::size_t>> g;
    auto const op_of = [&]( std::size_t i ) { return ops[std::min( i, ops.size() - 1u )]; };
    std::size_t begin = 0;
    for ( std::size_t i = 1; i <= inputs.size(); ++i )
    {
      if ( i == inputs.size() || op_of( i ) != op_of( begin ) )
      {
        g.emplace_back( begin, i );
        begin = i;
      }
    }
    return g;
  }
};

/*! \brief Parses an operator string over '&' and '|'. */
inline std::vector<node_kind> parse_ops( std::string_view text )
{
  std::vector<node_kind> ops;
  for ( char ch : text )
  {
    if ( ch == '&' )
    {
      ops.push_back( node_kind::and2 );
    }
    else if ( ch == '|' )
    {
      ops.push_back( node_kind::or2 );
    }
    else
    {
      throw std::invalid_argument( std::string( "operator must be '&' or '|', got '" ) + ch + "'" );
    }
  }
  return ops;
}

inline std::string ops_to_string( std::span<const node_kind> ops )
{
  std::string s;
  for ( auto op : ops )
  {
    s.push_back( op == node_kind::and2 ? '&' : '|' );
  }
  return s;
}

/*! \brief Synthesizes a generalized path.
 *
 * Each maximal group of inputs feeding the same operator kind becomes a
 * delay-optimal tree of that kind; the group outputs then form an ordinary
 * AND-OR path whose first gate is the first operator.
 */
inline synth_result synth_generalized( generalized_instance const& inst, synth_config const& config = {} )
{
  inst.check();
  synth_result r;
  std::vector<leaf> inputs;
  for ( auto const& in : inst.inputs )
  {
    inputs.push_back( { r.circ.add_input( in.name, in.arrival ), in.arrival } );
  }
  auto const op_of = [&]( std::size_t i ) { return inst.ops[std::min( i, inst.ops.size() - 1u )]; };
  std::vector<leaf> group_roots;
  for ( auto [begin, end] : inst.groups() )
  {
    std::span<const leaf> members( inputs.data() + begin, end - begin );
    group_roots.push_back( huffman_tree( members, op_of( begin ), r.circ ) );
  }
  std::vector<leaf> none;
  r.shift = detail::normalize_leaves( none, group_roots, config );
  auto const pol = inst.ops.front() == node_kind::and2 ? polarity::and_first : polarity::or_first;
  auto const root = construct_into( r.circ, none, group_roots, pol, config, &r.stats );
  r.circ.add_output( root.node );
  r.d = r.stats.d != 0u ? r.stats.d : root.arrival;
  r.timing = compute_timing( r.circ );
  return r;
}

/*! \brief An r-bit binary adder with per-bit operand arrival times. */
struct adder_spec
{
  unsigned width{ 0 };
  std::vector<arrival_t> x_arrivals;
  std::vector<arrival_t> y_arrivals;
  bool emit_sums{ false };

  void check() const
  {
    if ( width == 0u )
    {
      throw std::invalid_argument( "adder width must be at least 1" );
    }
    if ( x_arrivals.size() != width || y_arrivals.size() != width )
    {
      throw std::invalid_argument( "adder needs one x and one y arrival time per bit" );
    }
  }
};

/*! \brief Per-carry information of a synthesized adder. */
struct carry_info
{
  /*! \brief Root node of carry c{i+1} (index i in the list). */
  node_id root;
  /*! \brief Length of the carry's AND-OR path (2i + 1). */
  std::size_t path_length;
  /*! \brief Arrival times of the generate/propagate leaves of the carry's path. */
  std::vector<arrival_t> leaf_arrivals;
  delay_t delay;
};

struct adder_result
{
  circuit circ;
  timing_report timing;
  std::vector<carry_info> carries;
  /*! \brief Latest carry plus two, the usual accounting for sums computed from carries. */
  delay_t sum_delay_two_level{ 0 };
};

/*! \brief Builds an adder whose carries are synthesized AND-OR paths.
 *
 * Inputs are x0..x{r-1} followed by y0..y{r-1}. Generate gi = xi & yi and
 * propagate pi = xi | yi nodes are shared by all carries; carry c{i} is the
 * OR-first path on (g{i-1}, p{i-1}, ..., p1, g0) with leaf arrival times
 * 1 + max(a(xj), a(yj)). Outputs are the carries c1..cr or, with sums,
 * s0..s{r-1} (via XOR2) followed by sr = cr.
 */
inline adder_result build_adder( adder_spec const& spec, synth_config const& config = {} )
{
  spec.check();
  adder_result r;
  auto& c = r.circ;
  auto const width = spec.width;
  std::vector<node_id> x( width ), y( width );
  for ( unsigned i = 0; i < width; ++i )
  {
    x[i] = c.add_input( "x" + std::to_string( i ), spec.x_arrivals[i] );
  }
  for ( unsigned i = 0; i < width; ++i )
  {
    y[i] = c.add_input( "y" + std::to_string( i ), spec.y_arrivals[i] );
  }
  std::vector<leaf> gen( width ), prop( width );
  for ( unsigned i = 0; i < width; ++i )
  {
    auto const a = std::max( spec.x_arrivals[i], spec.y_arrivals[i] ) + 1u;
    gen[i] = { c.add_gate( node_kind::and2, x[i], y[i] ), a };
    if ( i > 0u )
    {
      prop[i] = { c.add_gate( node_kind::or2, x[i], y[i] ), a };
    }
  }

  for ( unsigned i = 1; i <= width; ++i )
  {
    std::vector<leaf> t;
    for ( unsigned j = i; j-- > 0u; )
    {
      t.push_back( gen[j] );
      if ( j > 0u )
      {
        t.push_back( prop[j] );
      }
    }
    carry_info info{ 0u, t.size(), {}, 0u };
    for ( auto const& l : t )
    {
      info.leaf_arrivals.push_back( l.arrival );
    }
    std::vector<leaf> none;
    detail::normalize_leaves( none, t, config );
    info.root = construct_into( c, none, t, polarity::or_first, config ).node;
    r.carries.push_back( std::move( info ) );
  }

  if ( spec.emit_sums )
  {
    c.add_output( c.add_gate( node_kind::xor2, x[0], y[0] ) );
    for ( unsigned i = 1; i < width; ++i )
    {
      auto const half = c.add_gate( node_kind::xor2, x[i], y[i] );
      c.add_output( c.add_gate( node_kind::xor2, half, r.carries[i - 1u].root ) );
    }
    c.add_output( r.carries.back().root );
  }
  else
  {
    for ( auto const& info : r.carries )
    {
      c.add_output( info.root );
    }
  }

  r.timing = compute_timing( c );
  auto const delays = node_delays( c );
  for ( auto& info : r.carries )
  {
    info.delay = delays[info.root];
    r.sum_delay_two_level = std::max( r.sum_delay_two_level, info.delay + 2u );
  }
  return r;
}

} // namespace aopsynth
