/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

#include <aopsynth/numeric.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace aopsynth;

TEST_CASE( "weights are exact powers of two", "[numeric]" )
{
  CHECK( weight_of( 0 ) == 1 );
  CHECK( weight_of( 10 ) == 1024 );
  weight const big = weight_of( 200 );
  CHECK( floor_log2( big ) == 200u );
  CHECK( ceil_log2( big ) == 200u );
  CHECK( ceil_log2( big + 1 ) == 201u );
  CHECK( total_weight( std::vector<arrival_t>{ 2, 0, 0 } ) == 6 );
}

TEST_CASE( "ceil_log2 is the smallest d with w <= 2^d", "[numeric]" )
{
  CHECK( ceil_log2( weight( 1 ) ) == 0u );
  CHECK( ceil_log2( weight( 2 ) ) == 1u );
  CHECK( ceil_log2( weight( 3 ) ) == 2u );
  CHECK( ceil_log2( weight( 6 ) ) == 3u );
  CHECK( ceil_log2( weight( 8 ) ) == 3u );
  CHECK( ceil_log2( weight( 9 ) ) == 4u );
  CHECK_THROWS_AS( ceil_log2( weight( 0 ) ), std::invalid_argument );
}

TEST_CASE( "log2_real is accurate for huge weights", "[numeric]" )
{
  CHECK( log2_real( weight( 1024 ) ) == Catch::Approx( 10.0 ) );
  CHECK( log2_real( weight_of( 500 ) * 3 ) == Catch::Approx( 500.0 + std::log2( 3.0 ) ) );
}

TEST_CASE( "log2_times_le decides log2(d) * a <= b", "[numeric]" )
{
  // powers of two are decided exactly, including equality
  CHECK( log2_times_le( 4, weight( 5 ), weight( 10 ) ) );
  CHECK_FALSE( log2_times_le( 4, weight( 5 ), weight( 9 ) ) );
  CHECK( log2_times_le( 2, weight( 7 ), weight( 7 ) ) );
  // log2(3) = 1.58496...
  CHECK( log2_times_le( 3, weight( 100 ), weight( 159 ) ) );
  CHECK_FALSE( log2_times_le( 3, weight( 100 ), weight( 158 ) ) );
  // scaled comparison for very large operands
  CHECK( log2_times_le( 3, weight_of( 300 ) * 100, weight_of( 300 ) * 159 ) );
  CHECK_FALSE( log2_times_le( 3, weight_of( 300 ) * 100, weight_of( 300 ) * 158 ) );
  CHECK_FALSE( log2_times_le( 5, weight( 1 ), weight( 0 ) ) );
}

TEST_CASE( "rationals normalize and compare exactly", "[numeric]" )
{
  CHECK( rational( 38, 20 ) == rational( 19, 10 ) );
  CHECK( rational( 19, 10 ) < rational( 2 ) );
  CHECK( rational( 1 ) < rational( 19, 10 ) );
  CHECK( ( rational( 3, 4 ) * rational( 2, 3 ) ) == rational( 1, 2 ) );
  CHECK( rational( 11, 4 ).ceil() == 3u );
  CHECK( rational( 12, 4 ).ceil() == 3u );
  CHECK( rational( 19, 10 ).to_string() == "19/10" );
  CHECK_THROWS_AS( rational( 1, 0 ), std::invalid_argument );
}

TEST_CASE( "parse_rational accepts integers, decimals and fractions", "[numeric]" )
{
  CHECK( parse_rational( "7" ) == rational( 7 ) );
  CHECK( parse_rational( "2.75" ) == rational( 11, 4 ) );
  CHECK( parse_rational( "11/4" ) == rational( 11, 4 ) );
  CHECK( parse_rational( "1.9" ) == rational( 19, 10 ) );
  CHECK( parse_rational( ".5" ) == rational( 1, 2 ) );
  CHECK_THROWS_AS( parse_rational( "-1" ), std::invalid_argument );
  CHECK_THROWS_AS( parse_rational( "1/0" ), std::invalid_argument );
  CHECK_THROWS_AS( parse_rational( "abc" ), std::invalid_argument );
  CHECK_THROWS_AS( parse_rational( "." ), std::invalid_argument );
  CHECK_THROWS_AS( parse_rational( "" ), std::invalid_argument );
}

TEST_CASE( "rational arrival times round up", "[numeric]" )
{
  CHECK( ceil_arrival( parse_rational( "2.75" ) ) == 3u );
  CHECK( ceil_arrival( parse_rational( "3" ) ) == 3u );
  CHECK( ceil_arrival( parse_rational( "0.001" ) ) == 1u );
}
