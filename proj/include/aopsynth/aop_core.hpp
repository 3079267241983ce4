/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file aop_core.hpp
  \brief Recursive delay-bounded construction of extended AND-OR paths.

  An AND-OR path on t = (t0, ..., t{m-1}) is g(t) = t0 & (t1 | (t2 & ...)),
  its dual g*(t) swaps every AND and OR. The extended path f(s, t) is the
  conjunction of the symmetric inputs s with g(t), and f*(s, t) the
  disjunction of s with g*(t).

  The construction picks the smallest delay target d for which the weights
  of the inputs satisfy

    W(t) <= zeta * (2^(d-1) - w) / (d * log2 d) + (d-1)/d * Lambda(t),

  where w = W(s), W is the sum of 2^a over arrival times and Lambda(t) is the
  weight of the last (at most) two entries of t. It then realizes f(s, t)
  with delay at most d by peeling off symmetric trees or splitting t into a
  prefix and a suffix and recursing on both with target d - 1.
*/

#pragma once

#include "circuit.hpp"
#include "numeric.hpp"
#include "symtree.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aopsynth
{

/*! \brief Whether the path starts with an AND (f, g) or with an OR (f*, g*). */
enum class polarity : std::uint8_t
{
  and_first,
  or_first
};

constexpr polarity flip( polarity p ) { return p == polarity::and_first ? polarity::or_first : polarity::and_first; }

constexpr std::string_view to_string( polarity p ) { return p == polarity::and_first ? "and-first" : "or-first"; }

struct named_input
{
  std::string name;
  arrival_t arrival{ 0 };

  friend bool operator==( named_input const&, named_input const& ) = default;
};

/*! \brief An extended AND-OR path f(s, t) or f*(s, t). */
struct aop_instance
{
  std::vector<named_input> symmetric;
  std::vector<named_input> alternating;
  polarity pol{ polarity::and_first };

  /*! \brief Throws std::invalid_argument unless m >= 1 and all names are distinct and non-empty. */
  void check() const
  {
    if ( alternating.empty() )
    {
      throw std::invalid_argument( "an AND-OR path needs at least one alternating input" );
    }
    std::set<std::string_view> names;
    for ( auto const* list : { &symmetric, &alternating } )
    {
      for ( auto const& in : *list )
      {
        if ( in.name.empty() )
        {
          throw std::invalid_argument( "input without a name" );
        }
        if ( !names.insert( in.name ).second )
        {
          throw std::invalid_argument( "duplicate input name '" + in.name + "'" );
        }
      }
    }
  }

  std::size_t num_inputs() const { return symmetric.size() + alternating.size(); }

  weight symmetric_weight() const
  {
    weight w = 0;
    for ( auto const& in : symmetric )
    {
      w += weight_of( in.arrival );
    }
    return w;
  }

  weight alternating_weight() const
  {
    weight w = 0;
    for ( auto const& in : alternating )
    {
      w += weight_of( in.arrival );
    }
    return w;
  }
};

/*! \brief Parameters of the synthesis flow. */
struct synth_config
{
  /*! \brief Slack constant of the feasibility condition; proven range is [1, 19/10]. */
  rational zeta{ 19u, 10u };
  /*! \brief Shift arrival times down before construction. */
  bool normalize{ true };
  /*! \brief Largest input count checked exhaustively during verification. */
  unsigned exhaustive_limit{ 24u };
};

/*! \brief Throws for zeta outside (0, 2); returns whether it lies outside the proven range [1, 19/10]. */
inline bool zeta_outside_proven_range( rational const& zeta )
{
  if ( zeta.num == 0u || zeta >= rational{ 2u } )
  {
    throw std::invalid_argument( "zeta must lie strictly between 0 and 2, got " + zeta.to_string() );
  }
  return zeta < rational{ 1u } || rational{ 19u, 10u } < zeta;
}

/*! \brief The feasibility condition and the per-subproblem weight budget. */
class feasibility
{
public:
  explicit feasibility( rational zeta = { 19u, 10u } ) : zeta_( zeta ) {}

  /*! \brief Whether W(t) <= zeta (2^(d-1) - w) / (d log2 d) + (d-1)/d Lambda(t) holds, for d >= 2. */
  bool holds( weight const& w, weight const& wt, weight const& lambda, std::uint64_t d ) const
  {
    if ( d < 2u )
    {
      return false;
    }
    weight const cap = weight_of( static_cast<arrival_t>( d - 1u ) ) - w;
    if ( cap <= 0 )
    {
      return false;
    }
    weight const lhs = weight( zeta_.den ) * ( weight( d ) * wt - weight( d - 1u ) * lambda );
    return log2_times_le( d, lhs, weight( zeta_.num ) * cap );
  }

  /*! \brief Whether x <= zeta (2^(d-1) - w) / (d log2 d), for d >= 2. */
  bool within_budget( weight const& x, weight const& w, std::uint64_t d ) const
  {
    if ( d < 2u )
    {
      throw std::logic_error( "weight budget needs a delay target of at least 2" );
    }
    weight const cap = weight_of( static_cast<arrival_t>( d - 1u ) ) - w;
    if ( cap <= 0 )
    {
      return false;
    }
    return log2_times_le( d, weight( zeta_.den ) * weight( d ) * x, weight( zeta_.num ) * cap );
  }

  /*! \brief Minimum d >= 2 satisfying `holds`, found by an upward linear scan.
   *
   * No d with 2^d < W(t) + w can satisfy the condition for zeta < 2, so the
   * scan starts just below ceil(log2(W(t) + w)). At the result, w < 2^(d-1).
   */
  std::uint64_t min_d( weight const& w, weight const& wt, weight const& lambda ) const
  {
    if ( wt <= 0 || lambda <= 0 || lambda > wt )
    {
      throw std::invalid_argument( "alternating weights must be positive" );
    }
    auto const lower = ceil_log2( wt + w );
    auto d = std::max<std::uint64_t>( 2u, lower > 0u ? lower - 1u : 0u );
    for ( ;; ++d )
    {
      if ( holds( w, wt, lambda, d ) )
      {
        return d;
      }
      if ( d > lower + 64u && d > 2u * lower )
      {
        throw std::logic_error( "feasibility scan did not terminate" );
      }
    }
  }

  rational const& zeta() const { return zeta_; }

private:
  rational zeta_;
};

/*! \brief Weight of the last (at most) two entries. */
inline weight tail_weight( std::span<const weight> t_weights )
{
  weight lambda = 0;
  auto const m = t_weights.size();
  for ( auto i = m >= 2u ? m - 2u : 0u; i < m; ++i )
  {
    lambda += t_weights[i];
  }
  return lambda;
}

/*! \brief Smallest delay target d for symmetric weight `w` and alternating weights `t_weights`. */
inline std::uint64_t min_feasible_d( weight const& w, std::span<const weight> t_weights, rational zeta = { 19u, 10u } )
{
  if ( t_weights.empty() )
  {
    throw std::invalid_argument( "min_feasible_d needs at least one alternating weight" );
  }
  weight wt = 0;
  for ( auto const& x : t_weights )
  {
    if ( x <= 0 )
    {
      throw std::invalid_argument( "alternating weights must be positive" );
    }
    wt += x;
  }
  return feasibility( zeta ).min_d( w, wt, tail_weight( t_weights ) );
}

/*! \brief Alternating split of t (length m) into a prefix and a suffix.
 *
 * t' is the odd-length prefix of length `prime_len`, t'' the rest. The tilde
 * prefix extends t' by the first two entries of t''. The chosen prefix t* has
 * length `star_len` (either t' or the tilde prefix) and t** is the rest. The
 * hat of t* consists of the entries at positions 1, 3, ..., star_len - 2.
 */
struct split_plan
{
  std::size_t m{ 0 };
  std::size_t prime_len{ 0 };
  std::size_t star_len{ 0 };

  std::size_t doubleprime_len() const { return m - prime_len; }
  std::size_t tilde_len() const { return std::min( prime_len + 2u, m ); }
  std::size_t starstar_len() const { return m - star_len; }
  bool uses_tilde() const { return star_len != prime_len; }

  /*! \brief Positions of the hat of a prefix of odd length `len`. */
  static std::vector<std::size_t> hat_positions( std::size_t len )
  {
    std::vector<std::size_t> pos;
    for ( std::size_t i = 1; i + 1u < len; i += 2u )
    {
      pos.push_back( i );
    }
    return pos;
  }

  std::vector<std::size_t> hat_star() const { return hat_positions( star_len ); }
};

/*! \brief Statistics of one construction. */
struct construct_stats
{
  /*! \brief Number of invocations of the recursive builder, including the top call. */
  std::size_t calls{ 0 };
  /*! \brief Delay target of the top call; 0 if the instance was a plain symmetric tree (m <= 2). */
  std::uint64_t d{ 0 };
  /*! \brief Deepest recursion level reached. */
  std::size_t max_depth{ 0 };
};

namespace detail
{

/*! \brief Recursive builder over contiguous ranges of the alternating inputs. */
class aop_builder
{
public:
  aop_builder( circuit& c, std::span<const leaf> t, feasibility const& feas, construct_stats& stats )
      : c_( c ), t_( t ), feas_( feas ), stats_( stats )
  {
    prefix_.reserve( t.size() + 1u );
    parity_prefix_[0].reserve( t.size() + 1u );
    parity_prefix_[1].reserve( t.size() + 1u );
    prefix_.emplace_back( 0 );
    parity_prefix_[0].emplace_back( 0 );
    parity_prefix_[1].emplace_back( 0 );
    for ( std::size_t i = 0; i < t.size(); ++i )
    {
      auto const wi = weight_of( t[i].arrival );
      prefix_.push_back( prefix_.back() + wi );
      parity_prefix_[i % 2u].push_back( parity_prefix_[i % 2u].back() + wi );
      parity_prefix_[1u - i % 2u].push_back( parity_prefix_[1u - i % 2u].back() );
    }
  }

  weight range_weight( std::size_t lo, std::size_t hi ) const { return prefix_[hi] - prefix_[lo]; }

  /*! \brief Weight of the hat of the odd-length range [lo, lo + len). */
  weight hat_weight( std::size_t lo, std::size_t len ) const
  {
    if ( len < 3u )
    {
      return 0;
    }
    auto const& p = parity_prefix_[( lo + 1u ) % 2u];
    return p[lo + len - 1u] - p[lo + 1u];
  }

  std::uint64_t min_d( weight const& w, std::size_t lo, std::size_t hi ) const
  {
    return feas_.min_d( w, range_weight( lo, hi ), range_weight( hi >= lo + 2u ? hi - 2u : lo, hi ) );
  }

  /*! \brief Chooses t' and t* for the range [lo, hi) with target d (requires d >= 4). */
  split_plan plan( weight const& w, std::size_t lo, std::size_t hi, std::uint64_t d ) const
  {
    split_plan p;
    p.m = hi - lo;
    // largest k with W(t[lo, lo + 2k + 1)) within the d-1 budget
    std::size_t good = 0, bad = ( p.m - 1u ) / 2u + 1u;
    if ( !feas_.within_budget( range_weight( lo, lo + 1u ), w, d - 1u ) )
    {
      return p;
    }
    while ( bad - good > 1u )
    {
      auto const mid = good + ( bad - good ) / 2u;
      if ( feas_.within_budget( range_weight( lo, lo + 2u * mid + 1u ), w, d - 1u ) )
      {
        good = mid;
      }
      else
      {
        bad = mid;
      }
    }
    p.prime_len = 2u * good + 1u;
    p.star_len = p.prime_len;
    if ( p.m - p.prime_len >= 4u )
    {
      auto const tilde = lo + p.prime_len + 2u;
      if ( feas_.holds( w, range_weight( lo, tilde ), range_weight( tilde - 2u, tilde ), d - 1u ) )
      {
        p.star_len = p.prime_len + 2u;
      }
    }
    return p;
  }

  leaf build( std::span<const leaf> s, weight const& w, std::size_t lo, std::size_t hi, bool dual, std::size_t depth )
  {
    ++stats_.calls;
    stats_.max_depth = std::max( stats_.max_depth, depth );
    auto const conj = dual ? node_kind::or2 : node_kind::and2;
    auto const disj = dual ? node_kind::and2 : node_kind::or2;
    auto const m = hi - lo;

    if ( m <= 2u )
    {
      return tree( s, lo, hi, conj );
    }

    auto const d = min_d( w, lo, hi );
    if ( depth == 0u )
    {
      stats_.d = d;
    }

    if ( d <= 3u )
    {
      if ( m != 3u || !s.empty() )
      {
        throw std::logic_error( "delay target <= 3 is only feasible for three alternating inputs" );
      }
      auto const inner = c_.add_gate( disj, t_[lo + 1u].node, t_[lo + 2u].node );
      return join( conj, t_[lo], { inner, std::max( t_[lo + 1u].arrival, t_[lo + 2u].arrival ) + 1u } );
    }

    if ( w >= weight_of( static_cast<arrival_t>( d - 2u ) ) )
    {
      auto const head = huffman_tree( s, conj, c_ );
      auto const rest = build( {}, 0, lo, hi, dual, depth + 1u );
      return join( conj, head, rest );
    }

    if ( !feas_.within_budget( range_weight( lo, lo + 1u ), w, d - 1u ) )
    {
      auto const head = tree( s, lo, lo + 1u, conj );
      auto const rest = build( {}, 0, lo + 1u, hi, !dual, depth + 1u );
      return join( conj, head, rest );
    }

    auto const p = plan( w, lo, hi, d );
    if ( p.prime_len == 0u || p.prime_len >= m )
    {
      throw std::logic_error( "alternating split without a proper odd prefix" );
    }
    auto const left = build( s, w, lo, lo + p.star_len, dual, depth + 1u );

    std::vector<leaf> hat;
    for ( auto pos : p.hat_star() )
    {
      hat.push_back( t_[lo + pos] );
    }
    auto const rest_lo = lo + p.star_len;
    leaf right{};
    if ( p.doubleprime_len() <= 2u )
    {
      right = tree( hat, rest_lo, hi, disj );
    }
    else if ( p.doubleprime_len() == 3u )
    {
      auto const inner = join( conj, t_[rest_lo + 1u], t_[rest_lo + 2u] );
      hat.push_back( t_[rest_lo] );
      hat.push_back( inner );
      right = huffman_tree( hat, disj, c_ );
    }
    else
    {
      right = build( hat, hat_weight( lo, p.star_len ), rest_lo, hi, !dual, depth + 1u );
    }
    return join( conj, left, right );
  }

private:
  leaf join( node_kind kind, leaf a, leaf b )
  {
    return { c_.add_gate( kind, a.node, b.node ), std::max( a.arrival, b.arrival ) + 1u };
  }

  /*! \brief Symmetric tree over s and the alternating entries [lo, hi). */
  leaf tree( std::span<const leaf> s, std::size_t lo, std::size_t hi, node_kind kind )
  {
    std::vector<leaf> leaves( s.begin(), s.end() );
    leaves.insert( leaves.end(), t_.begin() + static_cast<std::ptrdiff_t>( lo ),
                   t_.begin() + static_cast<std::ptrdiff_t>( hi ) );
    return huffman_tree( leaves, kind, c_ );
  }

  circuit& c_;
  std::span<const leaf> t_;
  feasibility const& feas_;
  construct_stats& stats_;
  std::vector<weight> prefix_;
  std::vector<weight> parity_prefix_[2];
};

} // namespace detail

/*! \brief Chooses the alternating split for symmetric weight `w` and target `d >= 4`.
 *
 * Returns a plan with `prime_len == 0` if not even the first entry fits the
 * budget of a subproblem with target d - 1.
 */
inline split_plan plan_split( weight const& w, std::span<const arrival_t> t_arrivals, std::uint64_t d,
                              rational zeta = { 19u, 10u } )
{
  if ( t_arrivals.empty() || d < 3u )
  {
    throw std::invalid_argument( "plan_split needs alternating inputs and d >= 3" );
  }
  std::vector<leaf> t;
  for ( auto a : t_arrivals )
  {
    t.push_back( { 0u, a } );
  }
  circuit scratch;
  construct_stats stats;
  feasibility const feas( zeta );
  detail::aop_builder builder( scratch, t, feas, stats );
  return builder.plan( w, 0u, t.size(), d );
}

/*! \brief Realizes f(s, t) (or f*(s, t)) over existing nodes of `c` and returns its root.
 *
 * The leaf arrival times drive all decisions; they need not match the arrival
 * times stored in `c`. Every created gate has fanout one. The root arrives no
 * later than the minimum feasible d (or the Kraft bound for m <= 2).
 */
inline leaf construct_into( circuit& c, std::span<const leaf> s, std::span<const leaf> t, polarity pol,
                            synth_config const& config = {}, construct_stats* stats = nullptr )
{
  if ( t.empty() )
  {
    throw std::invalid_argument( "an AND-OR path needs at least one alternating input" );
  }
  construct_stats local;
  auto& st = stats ? *stats : local;
  st = {};
  feasibility const feas( config.zeta );
  weight w = 0;
  for ( auto const& l : s )
  {
    w += weight_of( l.arrival );
  }
  detail::aop_builder builder( c, t, feas, st );
  return builder.build( s, w, 0u, t.size(), pol == polarity::or_first, 0u );
}

/*! \brief Builds a single-output circuit for the instance; inputs are created as s followed by t. */
inline circuit construct( aop_instance const& inst, synth_config const& config = {}, construct_stats* stats = nullptr )
{
  inst.check();
  circuit c;
  std::vector<leaf> s, t;
  for ( auto const& in : inst.symmetric )
  {
    s.push_back( { c.add_input( in.name, in.arrival ), in.arrival } );
  }
  for ( auto const& in : inst.alternating )
  {
    t.push_back( { c.add_input( in.name, in.arrival ), in.arrival } );
  }
  auto const root = construct_into( c, s, t, inst.pol, config, stats );
  c.add_output( root.node );
  return c;
}

/*! \brief The two halves of an alternating split; joining them with `join_kind` gives the original. */
struct alternating_split
{
  aop_instance prefix;
  aop_instance suffix;
  node_kind join_kind;
};

/*! \brief Splits after the odd prefix of length 2k + 1.
 *
 * For f*(s, t) this gives f*(s, t') | f(hat t', t''); for f(s, t) the dual
 * f(s, t') & f*(hat t', t''). Requires 2k + 1 < m.
 */
inline alternating_split split_alternating( aop_instance const& inst, std::size_t k )
{
  auto const m = inst.alternating.size();
  if ( 2u * k + 1u >= m )
  {
    throw std::out_of_range( "split index k out of range" );
  }
  auto const len = 2u * k + 1u;
  alternating_split r;
  r.prefix.pol = inst.pol;
  r.prefix.symmetric = inst.symmetric;
  r.prefix.alternating.assign( inst.alternating.begin(), inst.alternating.begin() + static_cast<std::ptrdiff_t>( len ) );
  r.suffix.pol = flip( inst.pol );
  for ( auto pos : split_plan::hat_positions( len ) )
  {
    r.suffix.symmetric.push_back( inst.alternating[pos] );
  }
  r.suffix.alternating.assign( inst.alternating.begin() + static_cast<std::ptrdiff_t>( len ), inst.alternating.end() );
  r.join_kind = inst.pol == polarity::and_first ? node_kind::and2 : node_kind::or2;
  return r;
}

/*! \brief Which inputs the symmetric split moves into the tree. */
enum class symmetric_variant : std::uint8_t
{
  /*! \brief f(s, t) = AND(s) & f((), t) */
  peel_s,
  /*! \brief f(s, t) = AND(s, t0) & f*((), (t1, ..., t{m-1})) */
  peel_s_and_t0
};

/*! \brief A symmetric tree over `tree_inputs` joined (with the polarity's first gate) to `rest`. */
struct symmetric_split
{
  std::vector<named_input> tree_inputs;
  aop_instance rest;
  node_kind join_kind;
};

inline symmetric_split split_symmetric( aop_instance const& inst, symmetric_variant variant )
{
  symmetric_split r;
  r.tree_inputs = inst.symmetric;
  r.join_kind = inst.pol == polarity::and_first ? node_kind::and2 : node_kind::or2;
  if ( variant == symmetric_variant::peel_s )
  {
    r.rest.pol = inst.pol;
    r.rest.alternating = inst.alternating;
    return r;
  }
  if ( inst.alternating.size() < 2u )
  {
    throw std::out_of_range( "peeling t0 needs at least two alternating inputs" );
  }
  r.tree_inputs.push_back( inst.alternating.front() );
  r.rest.pol = flip( inst.pol );
  r.rest.alternating.assign( inst.alternating.begin() + 1, inst.alternating.end() );
  return r;
}

} // namespace aopsynth
