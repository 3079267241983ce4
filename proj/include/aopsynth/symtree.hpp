/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file symtree.hpp
  \brief Delay-optimal symmetric trees and fanout-limiting buffer insertion.
*/

#pragma once

#include "circuit.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

namespace aopsynth
{

/*! \brief A tree leaf: an existing node and the (virtual) time its value is available. */
struct leaf
{
  node_id node;
  arrival_t arrival;
};

/*! \brief Smallest `d` with sum of 2^a <= 2^d, i.e. ceil(log2 W), computed exactly. */
template<class Range>
std::uint64_t kraft_min_delay( Range const& arrivals )
{
  if ( std::empty( arrivals ) )
  {
    throw std::invalid_argument( "kraft_min_delay of an empty list" );
  }
  return ceil_log2( total_weight( arrivals ) );
}

/*! \brief Builds a delay-optimal tree of `kind` gates over `leaves` into `into`.
 *
 * Greedy Huffman rule: repeatedly combine the two items of minimum arrival
 * into a gate arriving one unit after the later of the two. Ties are broken
 * by the smaller node id. The returned root arrives exactly at
 * `kraft_min_delay` of the leaf arrivals; a single leaf is returned as is.
 */
inline leaf huffman_tree( std::span<const leaf> leaves, node_kind kind, circuit& into )
{
  if ( leaves.empty() )
  {
    throw std::invalid_argument( "huffman_tree over no leaves" );
  }
  if ( kind != node_kind::and2 && kind != node_kind::or2 )
  {
    throw std::invalid_argument( "huffman_tree needs AND2 or OR2" );
  }
  if ( leaves.size() == 1u )
  {
    return leaves.front();
  }

  using item = std::pair<arrival_t, node_id>;
  std::priority_queue<item, std::vector<item>, std::greater<item>> heap;
  for ( auto const& l : leaves )
  {
    heap.emplace( l.arrival, l.node );
  }
  while ( heap.size() > 1u )
  {
    auto const [a0, n0] = heap.top();
    heap.pop();
    auto const [a1, n1] = heap.top();
    heap.pop();
    auto const g = into.add_gate( kind, n0, n1 );
    heap.emplace( std::max( a0, a1 ) + 1u, g );
  }
  auto const [a, n] = heap.top();
  return { n, a };
}

namespace detail
{

/*! \brief Longest gate count from each node to any output (0 for outputs themselves). */
inline std::vector<delay_t> depth_to_outputs( circuit const& c )
{
  std::vector<delay_t> depth( c.size(), 0u );
  std::vector<bool> reaches( c.size(), false );
  for ( auto o : c.outputs() )
  {
    reaches[o] = true;
  }
  for ( auto v = static_cast<std::int64_t>( c.size() ) - 1; v >= 0; --v )
  {
    auto const id = static_cast<node_id>( v );
    if ( !reaches[id] )
    {
      continue;
    }
    for ( auto f : c.fanins( id ) )
    {
      depth[f] = std::max( depth[f], depth[id] + 1u );
      reaches[f] = true;
    }
  }
  return depth;
}

} // namespace detail

/*! \brief Returns an equivalent circuit in which no node drives more than `fanout_limit` fanins.
 *
 * Each overloaded node gets a buffer tree whose root is the node itself. The
 * tree is built with the Huffman rule over the consumer edges, each keyed by
 * the consumer's longest remaining gate count to an output, so the most
 * critical consumers stay closest to the driver. Output ports do not count
 * as fanout. Throws circuit_error on invalid circuits.
 */
inline circuit rebuffer( circuit const& c, unsigned fanout_limit = 2u )
{
  if ( fanout_limit < 2u )
  {
    throw std::invalid_argument( "fanout limit must be at least 2" );
  }
  require_valid( c );

  auto const n = c.size();
  auto const counts = c.fanout_counts();
  auto const depth = detail::depth_to_outputs( c );

  // consumer edges per node: (consumer, fanin slot)
  std::vector<std::vector<std::pair<node_id, std::uint32_t>>> edges( n );
  // position of each (consumer, slot) in its driver's edge list
  std::vector<std::array<std::uint32_t, 2>> edge_pos( n );
  for ( node_id v = 0; v < n; ++v )
  {
    auto const fis = c.fanins( v );
    for ( std::uint32_t k = 0; k < fis.size(); ++k )
    {
      if ( counts[fis[k]] > fanout_limit )
      {
        edge_pos[v][k] = static_cast<std::uint32_t>( edges[fis[k]].size() );
        edges[fis[k]].emplace_back( v, k );
      }
    }
  }

  // buffer plan per overloaded node: plan items are either sinks (edge index)
  // or buffers (index into `bufs`); the node itself drives the final items
  struct plan_item
  {
    delay_t required;
    std::uint32_t order;
    bool is_buf;
    std::uint32_t index;

    auto key() const { return std::pair{ required, order }; }
  };
  struct plan
  {
    std::vector<std::vector<plan_item>> bufs;
    std::vector<plan_item> roots;
  };
  std::vector<plan> plans( n );

  for ( node_id v = 0; v < n; ++v )
  {
    auto const& sinks = edges[v];
    if ( sinks.empty() )
    {
      continue;
    }
    auto cmp = []( plan_item const& x, plan_item const& y ) { return x.key() > y.key(); };
    std::priority_queue<plan_item, std::vector<plan_item>, decltype( cmp )> heap( cmp );
    std::uint32_t order = 0;
    for ( std::uint32_t e = 0; e < sinks.size(); ++e )
    {
      heap.push( { depth[sinks[e].first] + 1u, order++, false, e } );
    }
    auto& p = plans[v];
    while ( heap.size() > fanout_limit )
    {
      // merge as many items as needed, but never more than a buffer may drive
      auto const excess = heap.size() - fanout_limit + 1u;
      auto const take = std::min<std::size_t>( fanout_limit, excess );
      std::vector<plan_item> group;
      delay_t worst = 0;
      for ( std::size_t i = 0; i < take; ++i )
      {
        group.push_back( heap.top() );
        worst = std::max( worst, heap.top().required );
        heap.pop();
      }
      p.bufs.push_back( std::move( group ) );
      heap.push( { worst + 1u, order++, true, static_cast<std::uint32_t>( p.bufs.size() - 1u ) } );
    }
    while ( !heap.empty() )
    {
      p.roots.push_back( heap.top() );
      heap.pop();
    }
  }

  circuit out;
  std::vector<node_id> remap( n );
  // new driver per consumer edge of an overloaded node, indexed like `edges`
  std::vector<std::vector<node_id>> edge_driver( n );
  for ( node_id v = 0; v < n; ++v )
  {
    std::vector<node_id> fis;
    fis.reserve( c.fanins( v ).size() );
    auto const old_fis = c.fanins( v );
    for ( std::uint32_t k = 0; k < old_fis.size(); ++k )
    {
      auto const f = old_fis[k];
      if ( edges[f].empty() )
      {
        fis.push_back( remap[f] );
        continue;
      }
      fis.push_back( edge_driver[f][edge_pos[v][k]] );
    }

    std::optional<std::string> name;
    std::optional<arrival_t> arrival;
    if ( c.kind( v ) == node_kind::input )
    {
      name = std::string( c.name( v ) );
      arrival = c.arrival( v );
    }
    remap[v] = out.add_node( c.kind( v ), fis, std::move( name ), arrival );

    if ( edges[v].empty() )
    {
      continue;
    }
    auto const& p = plans[v];
    edge_driver[v].assign( edges[v].size(), remap[v] );
    // breadth-first from the node: every buffer is emitted after its driver
    std::vector<std::pair<plan_item, node_id>> queue;
    for ( auto const& r : p.roots )
    {
      queue.emplace_back( r, remap[v] );
    }
    for ( std::size_t head = 0; head < queue.size(); ++head )
    {
      auto const [item, driver] = queue[head];
      if ( !item.is_buf )
      {
        edge_driver[v][item.index] = driver;
        continue;
      }
      auto const b = out.add_buf( driver );
      for ( auto const& child : p.bufs[item.index] )
      {
        queue.emplace_back( child, b );
      }
    }
  }
  for ( auto o : c.outputs() )
  {
    out.add_output( remap[o] );
  }
  return out;
}

} // namespace aopsynth
