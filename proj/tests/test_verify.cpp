/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

#include <aopsynth/frontend.hpp>
#include <aopsynth/verify.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

using namespace aopsynth;

namespace
{

aop_instance make_instance( std::size_t m, polarity pol = polarity::and_first, std::size_t ns = 0 )
{
  aop_instance inst;
  inst.pol = pol;
  for ( std::size_t i = 0; i < ns; ++i )
  {
    inst.symmetric.push_back( { "s" + std::to_string( i ), 0u } );
  }
  for ( std::size_t i = 0; i < m; ++i )
  {
    inst.alternating.push_back( { "t" + std::to_string( i ), 0u } );
  }
  return inst;
}

assignment bits_to_assignment( std::vector<std::string> const& names, std::string_view bits )
{
  assignment a;
  for ( std::size_t i = 0; i < names.size(); ++i )
  {
    a[names[i]] = bits[i] == '1';
  }
  return a;
}

} // namespace

TEST_CASE( "eval_reference examples", "[verify]" )
{
  // t0 & (t1 | (t2 & t3))
  auto const f = make_instance( 4u );
  std::vector<std::string> const names{ "t0", "t1", "t2", "t3" };
  CHECK( eval_reference( f, bits_to_assignment( names, "1100" ) ) );
  CHECK( eval_reference( f, bits_to_assignment( names, "1011" ) ) );
  CHECK_FALSE( eval_reference( f, bits_to_assignment( names, "1010" ) ) );
  CHECK_FALSE( eval_reference( f, bits_to_assignment( names, "0111" ) ) );

  // t0 | (t1 & (t2 | t3))
  auto const fs = make_instance( 4u, polarity::or_first );
  CHECK( eval_reference( fs, bits_to_assignment( names, "1000" ) ) );
  CHECK( eval_reference( fs, bits_to_assignment( names, "0101" ) ) );
  CHECK_FALSE( eval_reference( fs, bits_to_assignment( names, "0100" ) ) );

  // s0 & t0 & (t1 | t2)
  auto const with_s = make_instance( 3u, polarity::and_first, 1u );
  std::vector<std::string> const names_s{ "s0", "t0", "t1", "t2" };
  CHECK( eval_reference( with_s, bits_to_assignment( names_s, "1101" ) ) );
  CHECK_FALSE( eval_reference( with_s, bits_to_assignment( names_s, "0111" ) ) );

  CHECK_THROWS_AS( eval_reference( f, assignment{} ), std::invalid_argument );

  generalized_instance g;
  g.inputs = { { "a", 0u }, { "b", 0u }, { "c", 0u } };
  g.ops = parse_ops( "||" );
  CHECK( eval_reference( g, bits_to_assignment( { "a", "b", "c" }, "001" ) ) );
  CHECK_FALSE( eval_reference( g, bits_to_assignment( { "a", "b", "c" }, "000" ) ) );
}

TEST_CASE( "equivalence of a hand-built twelve-input split", "[verify]" )
{
  // f*(t0..t11) = f*(t0..t6) | f(t1, t3, t5; t7..t11), each side as a naive chain
  auto const inst = make_instance( 12u, polarity::or_first );
  circuit c;
  std::vector<node_id> t;
  for ( int i = 0; i < 12; ++i )
  {
    t.push_back( c.add_input( "t" + std::to_string( i ), 0u ) );
  }
  auto chain = [&]( std::vector<node_id> const& xs, node_kind first ) {
    auto v = xs.back();
    for ( auto i = xs.size() - 1u; i-- > 0u; )
    {
      v = c.add_gate( i % 2u == 0u ? first : dual( first ), xs[i], v );
    }
    return v;
  };
  auto const left = chain( { t[0], t[1], t[2], t[3], t[4], t[5], t[6] }, node_kind::or2 );
  auto right = chain( { t[7], t[8], t[9], t[10], t[11] }, node_kind::and2 );
  for ( auto i : { 1, 3, 5 } )
  {
    right = c.add_gate( node_kind::and2, t[i], right );
  }
  c.add_output( c.add_gate( node_kind::or2, left, right ) );
  auto const v = check_equivalence( c, inst );
  CHECK( v.equivalent );
  CHECK( v.mode == check_mode::exhaustive );
  CHECK( v.vectors == 4096u );
}

TEST_CASE( "identity circuit on one input", "[verify]" )
{
  circuit c;
  c.add_output( c.add_input( "t0", 3u ) );
  CHECK( check_equivalence( c, make_instance( 1u ) ).equivalent );
  CHECK( check_equivalence( c, make_instance( 1u, polarity::or_first ) ).equivalent );
}

TEST_CASE( "a mutated gate yields a minimized counterexample", "[verify]" )
{
  auto const inst = make_instance( 10u );
  auto r = synth( inst );
  // flip the kind of the root gate
  auto const root = r.circ.outputs().front();
  r.circ.set_kind( root, dual( r.circ.kind( root ) ) );
  for ( auto mode : { check_mode::exhaustive, check_mode::random } )
  {
    check_options opts;
    opts.mode = mode;
    auto const v = check_equivalence( r.circ, inst, opts );
    REQUIRE_FALSE( v.equivalent );
    REQUIRE( v.counterexample.size() == 10u );
    // the counterexample really distinguishes the two
    bool const got = evaluate( r.circ, v.counterexample ).front();
    CHECK( got != eval_reference( inst, v.counterexample ) );
  }
}

TEST_CASE( "random mode is deterministic per seed", "[verify]" )
{
  auto const inst = make_instance( 40u );
  auto const r = synth( inst );
  check_options opts;
  opts.seed = 12345u;
  opts.random_vectors = 3000u;
  auto const a = check_equivalence( r.circ, inst, opts );
  auto const b = check_equivalence( r.circ, inst, opts );
  CHECK( a.mode == check_mode::random );
  CHECK( a.equivalent );
  CHECK( a.seed == 12345u );
  CHECK( a.vectors == b.vectors );
  CHECK( a.vectors >= 3000u );
}

TEST_CASE( "AOP_SEED overrides the default seed", "[verify]" )
{
  ::setenv( "AOP_SEED", "0x1234", 1 );
  CHECK( default_seed() == 0x1234u );
  ::setenv( "AOP_SEED", "77", 1 );
  CHECK( default_seed() == 77u );
  ::setenv( "AOP_SEED", "not-a-number", 1 );
  CHECK( default_seed() == builtin_seed );
  ::unsetenv( "AOP_SEED" );
  CHECK( default_seed() == builtin_seed );
}

TEST_CASE( "input name mismatches are reported", "[verify]" )
{
  circuit c;
  c.add_output( c.add_input( "z", 0u ) );
  CHECK_THROWS_AS( check_equivalence( c, make_instance( 1u ) ), std::invalid_argument );
}

TEST_CASE( "circuit against circuit", "[verify]" )
{
  circuit a, b;
  auto const x = a.add_input( "x", 0u ), y = a.add_input( "y", 0u );
  a.add_output( a.add_gate( node_kind::and2, x, y ) );
  auto const y2 = b.add_input( "y", 0u ), x2 = b.add_input( "x", 0u );
  b.add_output( b.add_gate( node_kind::and2, y2, x2 ) );
  CHECK( check_equivalence( a, b ).equivalent );
  b.set_kind( 2u, node_kind::or2 );
  CHECK_FALSE( check_equivalence( a, b ).equivalent );
}

TEST_CASE( "check_bounds examples", "[verify]" )
{
  SECTION( "three inputs" )
  {
    auto const inst = make_instance( 3u );
    auto const r = synth( inst );
    auto const b = check_bounds( r.circ, inst );
    CHECK( b.ok() );
    CHECK( b.achieved_delay == 2u );
    CHECK( b.lower_bound == 2u );
    REQUIRE( b.bound_plus7 );
    auto const expected = std::log2( 3.0L ) + std::log2( std::log2( 3.0L ) ) + std::log2( std::log2( std::log2( 3.0L ) ) ) + 7.0L;
    CHECK( std::abs( *b.bound_plus7 - expected ) < 1e-9L );
    CHECK( b.gate_fanout_one.value() );
  }
  SECTION( "sixty-four inputs" )
  {
    auto const inst = make_instance( 64u );
    auto const r = synth( inst );
    auto const b = check_bounds( r.circ, inst );
    CHECK( b.ok() );
    REQUIRE( b.bound_plus7 );
    CHECK( std::abs( *b.bound_plus7 - ( 6.0L + std::log2( 6.0L ) + std::log2( std::log2( 6.0L ) ) + 7.0L ) ) < 1e-9L );
    CHECK( b.size_bound );
    CHECK( b.fanout_bound );
  }
  SECTION( "bounds are undefined for fewer than three inputs" )
  {
    auto const inst = make_instance( 2u );
    auto const r = synth( inst );
    auto const b = check_bounds( r.circ, inst );
    CHECK( b.ok() );
    CHECK_FALSE( b.bound_plus7 );
    CHECK( b.achieved_delay == b.lower_bound );
  }
  SECTION( "a slow chain violates the bound" )
  {
    auto const inst = make_instance( 64u );
    circuit c;
    std::vector<node_id> t;
    for ( int i = 0; i < 64; ++i )
    {
      t.push_back( c.add_input( "t" + std::to_string( i ), 0u ) );
    }
    auto v = t.back();
    for ( auto i = t.size() - 1u; i-- > 0u; )
    {
      v = c.add_gate( i % 2u == 0u ? node_kind::and2 : node_kind::or2, t[i], v );
    }
    c.add_output( v );
    REQUIRE( check_equivalence( c, inst ).equivalent );
    auto const b = check_bounds( c, inst );
    CHECK_FALSE( b.ok() );
    CHECK( b.achieved_delay == 63u );
  }
  SECTION( "a gate with fanout two breaks the structure check" )
  {
    auto const inst = make_instance( 3u );
    circuit c;
    auto const t0 = c.add_input( "t0", 0u ), t1 = c.add_input( "t1", 0u ), t2 = c.add_input( "t2", 0u );
    auto const a = c.add_gate( node_kind::or2, t1, t2 );
    auto const b = c.add_gate( node_kind::and2, t0, a );
    c.add_output( c.add_gate( node_kind::and2, b, a ) );
    REQUIRE( check_equivalence( c, inst ).equivalent );
    auto const r = check_bounds( c, inst );
    CHECK_FALSE( r.gate_fanout_one.value() );
    CHECK( r.alternating_fanout_within_d.value() );
    CHECK_FALSE( r.ok() );
  }
}

TEST_CASE( "generalized delay bound", "[verify]" )
{
  CHECK( generalized_delay_bound( 8, 0u ) == 4.0L );
  CHECK( generalized_delay_bound( 8, 1u ) == 4.0L );
  auto const b = generalized_delay_bound( 12, 4u );
  auto const l5 = std::log2( 5.0L );
  CHECK( std::abs( b - ( std::log2( 12.0L ) + std::log2( l5 ) + std::log2( std::log2( l5 ) ) + 8.0L ) ) < 1e-9L );
}
