/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file acceptance.cpp
  \brief End-to-end acceptance checks; prints one PASS/FAIL line per criterion.
*/

#include <aopsynth/aopsynth.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace aopsynth;

namespace
{

struct outcome
{
  bool pass{ true };
  std::string detail;
};

aop_instance make_instance( std::vector<arrival_t> const& t, polarity pol, std::vector<arrival_t> const& s = {} )
{
  aop_instance inst;
  inst.pol = pol;
  for ( std::size_t i = 0; i < s.size(); ++i )
  {
    inst.symmetric.push_back( { "s" + std::to_string( i ), s[i] } );
  }
  for ( std::size_t i = 0; i < t.size(); ++i )
  {
    inst.alternating.push_back( { "t" + std::to_string( i ), t[i] } );
  }
  return inst;
}

std::vector<arrival_t> uniform_arrivals( std::mt19937_64& rng, std::size_t m, arrival_t hi )
{
  std::uniform_int_distribution<arrival_t> dist( 0u, hi );
  std::vector<arrival_t> a( m );
  for ( auto& x : a )
  {
    x = dist( rng );
  }
  return a;
}

template<class Fn>
double seconds( Fn&& fn )
{
  auto const start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
}

/* 1: exhaustive equivalence of synthesized paths for m <= 16. */
outcome equivalence_sweep()
{
  std::mt19937_64 rng( 1 );
  std::size_t circuits = 0, failures = 0;
  check_options opts;
  opts.mode = check_mode::exhaustive;
  for ( std::size_t m = 1; m <= 16; ++m )
  {
    for ( auto pol : { polarity::and_first, polarity::or_first } )
    {
      for ( int profile = 0; profile < 50; ++profile )
      {
        auto const inst = make_instance( uniform_arrivals( rng, m, 8u ), pol );
        auto const r = synth( inst );
        failures += check_equivalence( r.circ, inst, opts ).equivalent ? 0u : 1u;
        ++circuits;
      }
    }
  }
  return { failures == 0u, std::to_string( circuits ) + " circuits, " + std::to_string( failures ) + " counterexamples" };
}

/* 2: the +7 delay bound on random instances with 3 <= m <= 2000. */
outcome delay_bound()
{
  std::mt19937_64 rng( 2 );
  std::uniform_int_distribution<std::size_t> msize( 3u, 2000u );
  std::size_t violations = 0, over_4_3 = 0;
  long double worst_slack = -1e9L;
  for ( int iter = 0; iter < 500; ++iter )
  {
    auto const m = msize( rng );
    auto const spread = static_cast<arrival_t>( iter % 3 == 0 ? 8u : iter % 3 == 1 ? 2u : 20u );
    auto const s = uniform_arrivals( rng, iter % 4 == 0 ? rng() % 4u : 0u, spread );
    auto const inst = make_instance( uniform_arrivals( rng, m, spread ), iter % 2 ? polarity::or_first : polarity::and_first, s );
    auto const r = synth( inst );
    auto const b = check_bounds( r.circ, inst );
    auto const delay = static_cast<long double>( b.achieved_delay );
    violations += delay > *b.bound_plus7 ? 1u : 0u;
    over_4_3 += delay > *b.bound_4_3 ? 1u : 0u;
    worst_slack = std::max( worst_slack, delay - *b.bound_plus7 );
  }
  std::ostringstream os;
  os << "500 instances, " << violations << " violations of the +7 bound, worst delay - bound = " << static_cast<double>( worst_slack )
     << "; informational: " << over_4_3 << " instances above the +4.3 bound";
  return { violations == 0u, os.str() };
}

/* 3: symmetric trees meet ceil(log2 W) exactly. */
outcome huffman_optimality()
{
  std::mt19937_64 rng( 3 );
  std::size_t mismatches = 0;
  for ( int iter = 0; iter < 1000; ++iter )
  {
    auto const arrivals = uniform_arrivals( rng, 1u + rng() % 200u, static_cast<arrival_t>( rng() % 30u ) );
    circuit c;
    std::vector<leaf> leaves;
    for ( std::size_t i = 0; i < arrivals.size(); ++i )
    {
      leaves.push_back( { c.add_input( "x" + std::to_string( i ), arrivals[i] ), arrivals[i] } );
    }
    c.add_output( huffman_tree( leaves, iter % 2 ? node_kind::or2 : node_kind::and2, c ).node );
    mismatches += compute_timing( c ).circuit_delay == ceil_log2( total_weight( arrivals ) ) ? 0u : 1u;
  }
  return { mismatches == 0u, "1000 multisets, " + std::to_string( mismatches ) + " mismatches" };
}

/* 4: fanout structure of every core circuit, and the size bound for m >= 500. */
outcome structural_bounds()
{
  std::mt19937_64 rng( 4 );
  std::size_t structure_failures = 0, size_failures = 0, large = 0;
  for ( int iter = 0; iter < 300; ++iter )
  {
    auto const m = iter < 100 ? 500u + rng() % 3500u : 1u + rng() % 499u;
    auto const inst = make_instance( uniform_arrivals( rng, m, 8u ), iter % 2 ? polarity::or_first : polarity::and_first,
                                     uniform_arrivals( rng, rng() % 4u, 8u ) );
    auto const r = synth( inst );
    auto const b = check_bounds( r.circ, inst );
    structure_failures +=
        ( *b.gate_fanout_one && *b.symmetric_fanout_one && *b.alternating_fanout_within_d ) ? 0u : 1u;
    if ( m >= 500u )
    {
      ++large;
      size_failures += static_cast<long double>( b.size ) <= *b.size_bound ? 0u : 1u;
    }
  }
  std::ostringstream os;
  os << "300 circuits, " << structure_failures << " fanout violations; " << large << " with m >= 500, " << size_failures
     << " size violations";
  return { structure_failures == 0u && size_failures == 0u, os.str() };
}

/* 5: adders against integer addition. */
outcome adder_oracle()
{
  std::mt19937_64 rng( 5 );
  std::size_t failures = 0;
  std::uint64_t vectors = 0;
  for ( unsigned width : { 8u, 16u, 32u, 64u } )
  {
    adder_spec spec;
    spec.width = width;
    spec.x_arrivals = uniform_arrivals( rng, width, 4u );
    spec.y_arrivals = uniform_arrivals( rng, width, 4u );
    spec.emit_sums = true;
    auto const r = build_adder( spec );
    check_options opts;
    opts.mode = width == 8u ? check_mode::exhaustive : check_mode::random;
    opts.random_vectors = 100000u;
    auto const v = check_adder( r.circ, spec, opts );
    failures += v.equivalent ? 0u : 1u;
    vectors += v.vectors;
  }
  return { failures == 0u, "widths 8 (exhaustive), 16, 32, 64; " + std::to_string( vectors ) + " operand pairs, " +
                               std::to_string( failures ) + " mismatching adders" };
}

/* 6: generalized paths: exhaustive equivalence and the +8 bound. */
outcome generalized_paths()
{
  std::mt19937_64 rng( 6 );
  std::size_t failures = 0, bound_failures = 0;
  check_options opts;
  opts.mode = check_mode::exhaustive;
  for ( int iter = 0; iter < 200; ++iter )
  {
    auto const m = 2u + rng() % 13u;
    generalized_instance g;
    auto const arrivals = uniform_arrivals( rng, m, 8u );
    for ( std::size_t i = 0; i < m; ++i )
    {
      g.inputs.push_back( { "t" + std::to_string( i ), arrivals[i] } );
    }
    for ( std::size_t i = 0; i + 1u < m; ++i )
    {
      g.ops.push_back( rng() % 2u ? node_kind::and2 : node_kind::or2 );
    }
    auto const r = synth_generalized( g );
    failures += check_equivalence( r.circ, g, opts ).equivalent ? 0u : 1u;
    auto const bound = generalized_delay_bound( total_weight( arrivals ), g.changes() );
    bound_failures += static_cast<long double>( r.timing.circuit_delay ) <= bound ? 0u : 1u;
  }
  return { failures == 0u && bound_failures == 0u, "200 instances, " + std::to_string( failures ) + " counterexamples, " +
                                                        std::to_string( bound_failures ) + " bound violations" };
}

/* 7: split identities, checked exhaustively against the reference evaluator. */
outcome split_identities()
{
  std::size_t checked = 0, failures = 0;
  auto const verify_identity = [&]( aop_instance const& inst, std::function<bool( assignment const& )> const& rhs ) {
    std::vector<std::string> names;
    for ( auto const* list : { &inst.symmetric, &inst.alternating } )
    {
      for ( auto const& in : *list )
      {
        names.push_back( in.name );
      }
    }
    bool ok = true;
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << names.size() ); ++bits )
    {
      assignment a;
      for ( std::size_t i = 0; i < names.size(); ++i )
      {
        a[names[i]] = ( ( bits >> i ) & 1u ) != 0u;
      }
      ok = ok && eval_reference( inst, a ) == rhs( a );
    }
    ++checked;
    failures += ok ? 0u : 1u;
  };
  auto const join = []( node_kind k, bool x, bool y ) { return k == node_kind::and2 ? ( x && y ) : ( x || y ); };

  for ( std::size_t m = 1; m <= 8; ++m )
  {
    for ( std::size_t ns = 0; ns <= 2; ++ns )
    {
      for ( auto pol : { polarity::and_first, polarity::or_first } )
      {
        auto const inst = make_instance( std::vector<arrival_t>( m, 0u ), pol, std::vector<arrival_t>( ns, 0u ) );
        for ( std::size_t k = 0; 2u * k + 1u < m; ++k )
        {
          auto const split = split_alternating( inst, k );
          verify_identity( inst, [&]( assignment const& a ) {
            return join( split.join_kind, eval_reference( split.prefix, a ), eval_reference( split.suffix, a ) );
          } );
        }
        for ( auto variant : { symmetric_variant::peel_s, symmetric_variant::peel_s_and_t0 } )
        {
          if ( variant == symmetric_variant::peel_s_and_t0 && m < 2u )
          {
            continue;
          }
          auto const split = split_symmetric( inst, variant );
          verify_identity( inst, [&]( assignment const& a ) {
            bool tree = split.join_kind == node_kind::and2;
            for ( auto const& in : split.tree_inputs )
            {
              tree = join( split.join_kind, tree, a.at( in.name ) );
            }
            return join( split.join_kind, tree, eval_reference( split.rest, a ) );
          } );
        }
      }
    }
  }
  return { failures == 0u, std::to_string( checked ) + " identities, " + std::to_string( failures ) + " failures" };
}

/* 8: rebuffering to fanout two. */
outcome rebuffering()
{
  std::mt19937_64 rng( 8 );
  std::size_t failures = 0;
  std::uint64_t worst_increase = 0;
  for ( int iter = 0; iter < 50; ++iter )
  {
    auto const m = iter == 0 ? 1000u : 1u + rng() % 1000u;
    auto const inst = make_instance( uniform_arrivals( rng, m, 8u ), iter % 2 ? polarity::or_first : polarity::and_first );
    auto const r = synth( inst );
    auto const b = rebuffer( r.circ, 2u );
    auto const before = compute_timing( r.circ );
    auto const after = compute_timing( b );
    check_options opts;
    opts.mode = check_mode::random;
    opts.random_vectors = 10000u;
    auto const allowance = before.max_fanout <= 1u ? 0u : ceil_log2( weight( before.max_fanout ) );
    bool const ok = check_equivalence( b, r.circ, opts ).equivalent && after.max_fanout <= 2u &&
                    after.circuit_delay <= before.circuit_delay + allowance;
    worst_increase = std::max<std::uint64_t>( worst_increase, after.circuit_delay - before.circuit_delay );
    failures += ok ? 0u : 1u;
  }
  return { failures == 0u, "50 circuits, " + std::to_string( failures ) + " failures, largest delay increase " +
                               std::to_string( worst_increase ) };
}

/* 9: runtime at m = 10000 and doubling ratios. */
outcome runtime_scaling()
{
  auto const median_time = []( std::size_t m ) {
    auto const inst = make_instance( std::vector<arrival_t>( m, 0u ), polarity::and_first );
    std::vector<double> times;
    for ( int run = 0; run < 5; ++run )
    {
      times.push_back( seconds( [&] { static_cast<void>( synth( inst ) ); } ) );
    }
    std::nth_element( times.begin(), times.begin() + 2, times.end() );
    return times[2];
  };
  auto const big = seconds( [] { static_cast<void>( synth( make_instance( std::vector<arrival_t>( 10000u, 0u ), polarity::and_first ) ) ); } );
  std::ostringstream os;
  os.precision( 3 );
  os << "m=10000 in " << big << " s; ratios";
  bool ok = big < 10.0;
  double prev = median_time( 1000u );
  for ( std::size_t m : { 2000u, 4000u, 8000u } )
  {
    auto const t = median_time( m );
    auto const ratio = t / prev;
    os << ' ' << ratio;
    ok = ok && ratio <= 5.0;
    prev = t;
  }
  return { ok, os.str() };
}

} // namespace

int main()
{
  std::vector<std::pair<char const*, std::function<outcome()>>> const criteria{
      { "equivalence sweep", equivalence_sweep },   { "delay bound (+7)", delay_bound },
      { "symmetric tree optimality", huffman_optimality }, { "structural bounds", structural_bounds },
      { "adder oracle", adder_oracle },             { "generalized paths", generalized_paths },
      { "split identities", split_identities },     { "rebuffering", rebuffering },
      { "runtime scaling", runtime_scaling } };
  int failed = 0;
  for ( std::size_t i = 0; i < criteria.size(); ++i )
  {
    outcome o;
    try
    {
      o = criteria[i].second();
    }
    catch ( std::exception const& e )
    {
      o = { false, std::string( "exception: " ) + e.what() };
    }
    std::printf( "%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1u, criteria[i].first, o.detail.c_str() );
    std::fflush( stdout );
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
