/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*
  Synthesizes AND-OR paths of growing length with uniform arrival times and
  compares the achieved delay with the lower bound ceil(log2 W) and with the
  guaranteed bound log2 W + log2 log2 m + log2 log2 log2 m + 7.
*/

#include <aopsynth/aopsynth.hpp>

#include <cstdio>
#include <string>

int main()
{
  using namespace aopsynth;

  std::printf( "%8s %6s %6s %8s %8s %8s\n", "m", "delay", "lower", "bound+7", "size", "fanout" );
  for ( std::size_t m : { 3u, 8u, 16u, 64u, 256u, 1024u, 4096u } )
  {
    aop_instance inst;
    for ( std::size_t i = 0; i < m; ++i )
    {
      inst.alternating.push_back( { "t" + std::to_string( i ), 0u } );
    }
    auto const r = synth( inst );
    auto const b = check_bounds( r.circ, inst );
    std::printf( "%8zu %6llu %6llu %8.2f %8zu %8zu\n", m, static_cast<unsigned long long>( b.achieved_delay ),
                 static_cast<unsigned long long>( b.lower_bound ), static_cast<double>( *b.bound_plus7 ), b.size,
                 b.max_fanout );
  }
  return 0;
}
