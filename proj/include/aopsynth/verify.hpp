/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file verify.hpp
  \brief Reference evaluators, equivalence checking and bound reports.
*/

#pragma once

#include "aop_core.hpp"
#include "circuit.hpp"
#include "frontend.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace aopsynth
{

using assignment = std::map<std::string, bool, std::less<>>;

/*! \brief Default seed of random equivalence checks. */
constexpr std::uint64_t builtin_seed = 0xA0A0u;

/*! \brief The default seed, overridden by the AOP_SEED environment variable (decimal or 0x-hex). */
inline std::uint64_t default_seed()
{
  if ( auto const* env = std::getenv( "AOP_SEED" ); env && *env )
  {
    char* end = nullptr;
    auto const v = std::strtoull( env, &end, 0 );
    if ( end && *end == '\0' )
    {
      return v;
    }
  }
  return builtin_seed;
}

/*! \brief Evaluates t0 o1 (t1 o2 (...)) lane-wise, where op(i) is the operator between t{i} and t{i+1}. */
template<class OpFn>
std::uint64_t eval_path_words( std::span<const std::uint64_t> t, OpFn&& op )
{
  auto v = t.back();
  for ( auto i = t.size() - 1u; i-- > 0u; )
  {
    v = op( i ) == node_kind::and2 ? ( t[i] & v ) : ( t[i] | v );
  }
  return v;
}

/*! \brief Bit-parallel reference value of f(s, t) or f*(s, t). */
inline std::uint64_t eval_reference_words( polarity pol, std::span<const std::uint64_t> s,
                                           std::span<const std::uint64_t> t )
{
  if ( t.empty() )
  {
    throw std::invalid_argument( "an AND-OR path needs at least one alternating input" );
  }
  auto const first = pol == polarity::and_first ? node_kind::and2 : node_kind::or2;
  auto v = eval_path_words( t, [&]( std::size_t i ) { return i % 2u == 0u ? first : dual( first ); } );
  for ( auto x : s )
  {
    v = first == node_kind::and2 ? ( v & x ) : ( v | x );
  }
  return v;
}

/*! \brief Bit-parallel reference value of a generalized path. */
inline std::uint64_t eval_reference_words( generalized_instance const& inst, std::span<const std::uint64_t> t )
{
  return eval_path_words( t, [&]( std::size_t i ) { return inst.ops[i]; } );
}

namespace detail
{

inline bool lookup( assignment const& a, std::string const& name )
{
  auto it = a.find( name );
  if ( it == a.end() )
  {
    throw std::invalid_argument( "missing assignment for input '" + name + "'" );
  }
  return it->second;
}

} // namespace detail

/*! \brief Evaluates the defining formula of f / f* directly. */
inline bool eval_reference( aop_instance const& inst, assignment const& a )
{
  std::vector<std::uint64_t> s, t;
  for ( auto const& in : inst.symmetric )
  {
    s.push_back( detail::lookup( a, in.name ) ? 1u : 0u );
  }
  for ( auto const& in : inst.alternating )
  {
    t.push_back( detail::lookup( a, in.name ) ? 1u : 0u );
  }
  return ( eval_reference_words( inst.pol, s, t ) & 1u ) != 0u;
}

/*! \brief Evaluates the defining formula of a generalized path directly. */
inline bool eval_reference( generalized_instance const& inst, assignment const& a )
{
  std::vector<std::uint64_t> t;
  for ( auto const& in : inst.inputs )
  {
    t.push_back( detail::lookup( a, in.name ) ? 1u : 0u );
  }
  return ( eval_reference_words( inst, t ) & 1u ) != 0u;
}

enum class check_mode : std::uint8_t
{
  exhaustive,
  random
};

struct check_options
{
  /*! \brief Force a mode; by default exhaustive iff the input count is within `exhaustive_limit`. */
  std::optional<check_mode> mode;
  unsigned exhaustive_limit{ 24u };
  std::uint64_t random_vectors{ 10000u };
  std::uint64_t seed{ default_seed() };
  bool minimize{ true };
};

struct equivalence_verdict
{
  check_mode mode{ check_mode::exhaustive };
  std::uint64_t seed{ 0 };
  /*! \brief Number of assignments simulated. */
  std::uint64_t vectors{ 0 };
  bool equivalent{ true };
  /*! \brief Mismatching assignment (minimized if requested); empty when equivalent. */
  assignment counterexample;
  /*! \brief First mismatching output position. */
  std::size_t output_index{ 0 };
};

/*! \brief Reference model: computes expected output words from input words given in reference order. */
using reference_fn = std::function<void( std::span<const std::uint64_t>, std::span<std::uint64_t> )>;

namespace detail
{

inline constexpr std::array<std::uint64_t, 6> lane_patterns{ 0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull,
                                                             0xF0F0F0F0F0F0F0F0ull, 0xFF00FF00FF00FF00ull,
                                                             0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull };

/*! \brief Compares `c` against `ref` over the inputs named `names` (reference order). */
class equivalence_engine
{
public:
  equivalence_engine( circuit const& c, std::vector<std::string> names, std::size_t num_outputs, reference_fn ref )
      : c_( c ), names_( std::move( names ) ), ref_( std::move( ref ) ), sim_( c ), expected_( num_outputs ),
        ref_words_( names_.size() ), circ_words_( c.num_inputs() )
  {
    if ( c.outputs().size() != num_outputs )
    {
      throw std::invalid_argument( "output count mismatch: circuit has " + std::to_string( c.outputs().size() ) +
                                   ", reference has " + std::to_string( num_outputs ) );
    }
    if ( names_.size() != c.num_inputs() )
    {
      throw std::invalid_argument( "input name mismatch: circuit has " + std::to_string( c.num_inputs() ) +
                                   " inputs, reference has " + std::to_string( names_.size() ) );
    }
    std::unordered_map<std::string_view, std::size_t> index;
    for ( std::size_t i = 0; i < names_.size(); ++i )
    {
      index.emplace( names_[i], i );
    }
    for ( auto in : c.inputs() )
    {
      auto it = index.find( c.name( in ) );
      if ( it == index.end() )
      {
        throw std::invalid_argument( "input name mismatch: '" + std::string( c.name( in ) ) +
                                     "' is not an input of the reference" );
      }
      circ_to_ref_.push_back( it->second );
    }
  }

  /*! \brief Returns a mask of lanes where circuit and reference disagree, and the first mismatching output. */
  std::pair<std::uint64_t, std::size_t> compare( std::span<const std::uint64_t> ref_words )
  {
    for ( std::size_t i = 0; i < circ_to_ref_.size(); ++i )
    {
      circ_words_[i] = ref_words[circ_to_ref_[i]];
    }
    ref_( ref_words, expected_ );
    auto const got = sim_.run( circ_words_ );
    std::uint64_t diff = 0;
    std::size_t first_out = 0;
    for ( std::size_t o = 0; o < got.size(); ++o )
    {
      auto const d = got[o] ^ expected_[o];
      if ( d != 0u && diff == 0u )
      {
        first_out = o;
      }
      diff |= d;
    }
    if ( diff != 0u )
    {
      // report the output that mismatches on the lowest differing lane
      auto const lane = std::countr_zero( diff );
      for ( std::size_t o = 0; o < got.size(); ++o )
      {
        if ( ( ( got[o] ^ expected_[o] ) >> lane ) & 1u )
        {
          first_out = o;
          break;
        }
      }
    }
    return { diff, first_out };
  }

  bool mismatch( std::vector<bool> const& bits )
  {
    for ( std::size_t i = 0; i < bits.size(); ++i )
    {
      ref_words_[i] = bits[i] ? 1u : 0u;
    }
    return ( compare( ref_words_ ).first & 1u ) != 0u;
  }

  void record( equivalence_verdict& v, std::vector<bool> bits, std::size_t output, bool minimize )
  {
    v.equivalent = false;
    v.output_index = output;
    if ( minimize )
    {
      for ( std::size_t i = 0; i < bits.size(); ++i )
      {
        if ( bits[i] )
        {
          bits[i] = false;
          if ( !mismatch( bits ) )
          {
            bits[i] = true;
          }
        }
      }
      for ( std::size_t i = 0; i < bits.size(); ++i )
      {
        ref_words_[i] = bits[i] ? 1u : 0u;
      }
      auto const [diff, out] = compare( ref_words_ );
      v.output_index = out;
      (void)diff;
    }
    for ( std::size_t i = 0; i < bits.size(); ++i )
    {
      v.counterexample.emplace( names_[i], bits[i] );
    }
  }

  equivalence_verdict run( check_options const& opts )
  {
    auto const n = names_.size();
    auto mode = opts.mode.value_or( n <= opts.exhaustive_limit ? check_mode::exhaustive : check_mode::random );
    if ( mode == check_mode::exhaustive && n > opts.exhaustive_limit )
    {
      throw std::invalid_argument( "exhaustive check of " + std::to_string( n ) + " inputs exceeds the limit of " +
                                   std::to_string( opts.exhaustive_limit ) );
    }
    equivalence_verdict v;
    v.mode = mode;
    return mode == check_mode::exhaustive ? exhaustive( v, opts ) : random( v, opts );
  }

private:
  equivalence_verdict& exhaustive( equivalence_verdict& v, check_options const& opts )
  {
    auto const n = names_.size();
    std::uint64_t const total = std::uint64_t{ 1 } << n;
    std::uint64_t const lanes_mask = total >= 64u ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << total ) - 1u;
    std::uint64_t const blocks = total >= 64u ? total / 64u : 1u;
    v.vectors = total;
    for ( std::uint64_t b = 0; b < blocks; ++b )
    {
      for ( std::size_t j = 0; j < n; ++j )
      {
        ref_words_[j] = j < 6u ? lane_patterns[j] : ( ( ( b >> ( j - 6u ) ) & 1u ) != 0u ? ~std::uint64_t{ 0 } : 0u );
      }
      auto const [diff_all, out] = compare( ref_words_ );
      auto const diff = diff_all & lanes_mask;
      if ( diff != 0u )
      {
        auto const index = b * 64u + static_cast<std::uint64_t>( std::countr_zero( diff ) );
        std::vector<bool> bits( n );
        for ( std::size_t j = 0; j < n; ++j )
        {
          bits[j] = ( ( index >> j ) & 1u ) != 0u;
        }
        record( v, std::move( bits ), out, opts.minimize );
        return v;
      }
    }
    return v;
  }

  equivalence_verdict& random( equivalence_verdict& v, check_options const& opts )
  {
    auto const n = names_.size();
    v.seed = opts.seed;
    // structured vectors first: all zeros, all ones, then every unit vector
    std::vector<std::vector<bool>> structured;
    structured.emplace_back( n, false );
    structured.emplace_back( n, true );
    for ( std::size_t j = 0; j < n; ++j )
    {
      structured.emplace_back( n, false );
      structured.back()[j] = true;
    }
    for ( std::size_t base = 0; base < structured.size(); base += 64u )
    {
      auto const count = std::min<std::size_t>( 64u, structured.size() - base );
      std::fill( ref_words_.begin(), ref_words_.end(), 0u );
      for ( std::size_t lane = 0; lane < count; ++lane )
      {
        for ( std::size_t j = 0; j < n; ++j )
        {
          ref_words_[j] |= structured[base + lane][j] ? ( std::uint64_t{ 1 } << lane ) : 0u;
        }
      }
      auto const mask = count == 64u ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << count ) - 1u;
      auto const [diff_all, out] = compare( ref_words_ );
      v.vectors += count;
      if ( auto const diff = diff_all & mask; diff != 0u )
      {
        record( v, structured[base + static_cast<std::size_t>( std::countr_zero( diff ) )], out, opts.minimize );
        return v;
      }
    }

    std::mt19937_64 rng( opts.seed );
    for ( std::uint64_t done = 0; done < opts.random_vectors; done += 64u )
    {
      auto const count = std::min<std::uint64_t>( 64u, opts.random_vectors - done );
      for ( std::size_t j = 0; j < n; ++j )
      {
        ref_words_[j] = rng();
      }
      auto const mask = count == 64u ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << count ) - 1u;
      auto const [diff_all, out] = compare( ref_words_ );
      v.vectors += count;
      if ( auto const diff = diff_all & mask; diff != 0u )
      {
        auto const lane = std::countr_zero( diff );
        std::vector<bool> bits( n );
        for ( std::size_t j = 0; j < n; ++j )
        {
          bits[j] = ( ( ref_words_[j] >> lane ) & 1u ) != 0u;
        }
        record( v, std::move( bits ), out, opts.minimize );
        return v;
      }
    }
    return v;
  }

  circuit const& c_;
  std::vector<std::string> names_;
  reference_fn ref_;
  packed_simulator sim_;
  std::vector<std::uint64_t> expected_;
  std::vector<std::uint64_t> ref_words_;
  std::vector<std::uint64_t> circ_words_;
  std::vector<std::size_t> circ_to_ref_;
};

} // namespace detail

/*! \brief Checks a single-output circuit against f(s, t) / f*(s, t); inputs are matched by name. */
inline equivalence_verdict check_equivalence( circuit const& c, aop_instance const& inst, check_options const& opts = {} )
{
  std::vector<std::string> names;
  for ( auto const* list : { &inst.symmetric, &inst.alternating } )
  {
    for ( auto const& in : *list )
    {
      names.push_back( in.name );
    }
  }
  auto const n_s = inst.symmetric.size();
  auto const pol = inst.pol;
  detail::equivalence_engine engine( c, std::move( names ), 1u,
                                     [n_s, pol]( std::span<const std::uint64_t> in, std::span<std::uint64_t> out ) {
                                       out[0] = eval_reference_words( pol, in.first( n_s ), in.subspan( n_s ) );
                                     } );
  return engine.run( opts );
}

/*! \brief Checks a single-output circuit against a generalized path. */
inline equivalence_verdict check_equivalence( circuit const& c, generalized_instance const& inst,
                                              check_options const& opts = {} )
{
  std::vector<std::string> names;
  for ( auto const& in : inst.inputs )
  {
    names.push_back( in.name );
  }
  detail::equivalence_engine engine( c, std::move( names ), 1u,
                                     [&inst]( std::span<const std::uint64_t> in, std::span<std::uint64_t> out ) {
                                       out[0] = eval_reference_words( inst, in );
                                     } );
  return engine.run( opts );
}

/*! \brief Checks two circuits with the same input names and output count against each other. */
inline equivalence_verdict check_equivalence( circuit const& c, circuit const& reference, check_options const& opts = {} )
{
  packed_simulator ref_sim( reference );
  auto const names = reference.input_names();
  detail::equivalence_engine engine( c, names, reference.outputs().size(),
                                     [&ref_sim]( std::span<const std::uint64_t> in, std::span<std::uint64_t> out ) {
                                       auto const got = ref_sim.run( in );
                                       std::copy( got.begin(), got.end(), out.begin() );
                                     } );
  return engine.run( opts );
}

/*! \brief Checks an adder circuit against integer addition.
 *
 * With sums the outputs must be the bits s0..sr of x + y; otherwise the
 * carries c1..cr, where ci is the carry into bit i.
 */
inline equivalence_verdict check_adder( circuit const& c, adder_spec const& spec, check_options const& opts = {} )
{
  spec.check();
  if ( spec.width > 64u )
  {
    throw std::invalid_argument( "adder oracle supports at most 64 bits" );
  }
  std::vector<std::string> names;
  for ( unsigned i = 0; i < spec.width; ++i )
  {
    names.push_back( "x" + std::to_string( i ) );
  }
  for ( unsigned i = 0; i < spec.width; ++i )
  {
    names.push_back( "y" + std::to_string( i ) );
  }
  auto const r = spec.width;
  auto const sums = spec.emit_sums;
  auto const outputs = sums ? r + 1u : r;
  detail::equivalence_engine engine(
      c, std::move( names ), outputs, [r, sums]( std::span<const std::uint64_t> in, std::span<std::uint64_t> out ) {
        using u128 = unsigned __int128;
        std::fill( out.begin(), out.end(), 0u );
        for ( unsigned lane = 0; lane < 64u; ++lane )
        {
          std::uint64_t x = 0, y = 0;
          for ( unsigned j = 0; j < r; ++j )
          {
            x |= ( ( in[j] >> lane ) & 1u ) << j;
            y |= ( ( in[r + j] >> lane ) & 1u ) << j;
          }
          if ( sums )
          {
            u128 const total = static_cast<u128>( x ) + y;
            for ( unsigned k = 0; k <= r; ++k )
            {
              out[k] |= static_cast<std::uint64_t>( ( total >> k ) & 1u ) << lane;
            }
          }
          else
          {
            for ( unsigned k = 1; k <= r; ++k )
            {
              u128 const mask = ( u128{ 1 } << k ) - 1u;
              u128 const partial = ( x & mask ) + ( y & mask );
              out[k - 1u] |= static_cast<std::uint64_t>( ( partial >> k ) & 1u ) << lane;
            }
          }
        }
      } );
  return engine.run( opts );
}

/*! \brief log2 log2 x, or nullopt where undefined (x <= 2). */
inline std::optional<long double> loglog2( long double x )
{
  if ( x <= 2.0L )
  {
    return std::nullopt;
  }
  return std::log2( std::log2( x ) );
}

/*! \brief log2 W + log2 log2 m + log2 log2 log2 m + c, defined for m >= 3. */
inline std::optional<long double> aop_delay_bound( weight const& w, std::size_t m, long double constant )
{
  if ( m < 3u )
  {
    return std::nullopt;
  }
  auto const lm = std::log2( static_cast<long double>( m ) );
  return log2_real( w ) + std::log2( lm ) + std::log2( std::log2( lm ) ) + constant;
}

/*! \brief Delay, size and fanout of a circuit compared against the guarantees for m alternating inputs. */
struct bound_report
{
  std::size_t m{ 0 };
  delay_t achieved_delay{ 0 };
  std::uint64_t lower_bound{ 0 };
  std::optional<long double> bound_plus7;
  /*! \brief Informational; only guaranteed with a separate construction for small instances. */
  std::optional<long double> bound_4_3;
  std::size_t size{ 0 };
  std::optional<long double> size_bound;
  std::size_t max_fanout{ 0 };
  std::optional<long double> fanout_bound;

  /*! \brief Delay target of the core construction, if the structure was checked. */
  std::optional<std::uint64_t> d;
  std::optional<bool> gate_fanout_one;
  std::optional<bool> symmetric_fanout_one;
  std::optional<bool> alternating_fanout_within_d;

  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail
{

inline void fill_generic_bounds( bound_report& r, circuit const& c, std::size_t m )
{
  auto const timing = compute_timing( c );
  weight w = 0;
  for ( auto i : c.inputs() )
  {
    w += weight_of( c.arrival( i ) );
  }
  r.m = m;
  r.achieved_delay = timing.circuit_delay;
  r.lower_bound = timing.lower_bound;
  r.size = timing.size;
  r.max_fanout = timing.max_fanout;
  r.bound_plus7 = aop_delay_bound( w, m, 7.0L );
  r.bound_4_3 = aop_delay_bound( w, m, 4.3L );
  if ( m >= 3u )
  {
    auto const lm = std::log2( static_cast<long double>( m ) );
    r.size_bound = 10.0L * static_cast<long double>( m ) * lm * std::log2( lm );
    r.fanout_bound = lm + std::log2( lm ) + std::log2( std::log2( lm ) ) + 3.3L;
  }

  if ( c.num_inputs() > 0u && r.achieved_delay < r.lower_bound )
  {
    r.violations.push_back( "delay below the lower bound" );
  }
  if ( r.bound_plus7 && static_cast<long double>( r.achieved_delay ) > *r.bound_plus7 )
  {
    r.violations.push_back( "delay exceeds the +7 bound" );
  }
  if ( m >= 500u && static_cast<long double>( r.size ) > *r.size_bound )
  {
    r.violations.push_back( "size exceeds the size bound" );
  }
  if ( m >= 500u && static_cast<long double>( r.max_fanout ) > *r.fanout_bound )
  {
    r.violations.push_back( "fanout exceeds the fanout bound" );
  }
}

} // namespace detail

/*! \brief Bound report for an arbitrary circuit, treating all inputs as alternating inputs. */
inline bound_report check_bounds( circuit const& c )
{
  bound_report r;
  detail::fill_generic_bounds( r, c, c.num_inputs() );
  return r;
}

/*! \brief Bound report for a circuit synthesized from `inst`, including the structural fanout facts.
 *
 * The delay target d is recomputed as the synthesis flow does (including the
 * arrival normalization selected in `config`).
 */
inline bound_report check_bounds( circuit const& c, aop_instance const& inst, synth_config const& config = {} )
{
  inst.check();
  bound_report r;
  auto const m = inst.alternating.size();
  detail::fill_generic_bounds( r, c, m );

  if ( m <= 2u && r.achieved_delay != r.lower_bound )
  {
    r.violations.push_back( "symmetric tree misses the exact optimum" );
  }

  std::vector<leaf> s, t;
  for ( auto const& in : inst.symmetric )
  {
    s.push_back( { 0u, in.arrival } );
  }
  for ( auto const& in : inst.alternating )
  {
    t.push_back( { 0u, in.arrival } );
  }
  auto const shift = detail::normalize_leaves( s, t, config );
  std::uint64_t d = 0;
  if ( m <= 2u )
  {
    std::vector<arrival_t> all;
    for ( auto const* list : { &s, &t } )
    {
      for ( auto const& l : *list )
      {
        all.push_back( l.arrival );
      }
    }
    d = kraft_min_delay( all );
  }
  else
  {
    weight w = 0;
    std::vector<weight> tw;
    for ( auto const& l : s )
    {
      w += weight_of( l.arrival );
    }
    for ( auto const& l : t )
    {
      tw.push_back( weight_of( l.arrival ) );
    }
    d = min_feasible_d( w, tw, config.zeta );
  }
  r.d = d;

  auto const fanout = c.fanout_counts();
  std::unordered_map<std::string_view, bool> is_symmetric;
  for ( auto const& in : inst.symmetric )
  {
    is_symmetric.emplace( in.name, true );
  }
  for ( auto const& in : inst.alternating )
  {
    is_symmetric.emplace( in.name, false );
  }
  bool gates_ok = true, sym_ok = true, alt_ok = true;
  auto const outs = c.outputs();
  for ( node_id v = 0; v < c.size(); ++v )
  {
    auto const is_output = std::find( outs.begin(), outs.end(), v ) != outs.end();
    if ( c.kind( v ) != node_kind::input )
    {
      gates_ok = gates_ok && fanout[v] == ( is_output ? 0u : 1u );
      continue;
    }
    auto it = is_symmetric.find( c.name( v ) );
    if ( it == is_symmetric.end() )
    {
      throw std::invalid_argument( "input name mismatch: '" + std::string( c.name( v ) ) +
                                   "' is not an input of the instance" );
    }
    if ( it->second )
    {
      sym_ok = sym_ok && fanout[v] + ( is_output ? 1u : 0u ) == 1u;
    }
    else
    {
      alt_ok = alt_ok && fanout[v] <= d;
    }
  }
  r.gate_fanout_one = gates_ok;
  r.symmetric_fanout_one = sym_ok;
  r.alternating_fanout_within_d = alt_ok;
  if ( !gates_ok )
  {
    r.violations.push_back( "a gate has fanout other than one" );
  }
  if ( !sym_ok )
  {
    r.violations.push_back( "a symmetric input has fanout other than one" );
  }
  if ( !alt_ok )
  {
    r.violations.push_back( "an alternating input has fanout above d" );
  }
  if ( r.achieved_delay > d + shift )
  {
    r.violations.push_back( "delay exceeds the delay target d plus the arrival shift" );
  }
  return r;
}

/*! \brief Delay guarantee for a generalized path with `changes` operator changes.
 *
 * log2 W + log2 log2 (c+1) + log2 log2 log2 (c+1) + 8 for c + 1 >= 3; for
 * fewer groups the path is at most two trees deep and ceil(log2 W) + 1 holds.
 */
inline long double generalized_delay_bound( weight const& w, std::size_t changes )
{
  if ( changes + 1u >= 3u )
  {
    return *aop_delay_bound( w, changes + 1u, 8.0L );
  }
  return static_cast<long double>( ceil_log2( w ) + 1u );
}

} // namespace aopsynth
