/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*
  Builds a 32-bit adder whose upper operand bits arrive late, checks it
  against integer addition on random operand pairs and reports the delay of
  every carry.
*/

#include <aopsynth/aopsynth.hpp>

#include <cstdio>

int main()
{
  using namespace aopsynth;

  adder_spec spec;
  spec.width = 32u;
  spec.emit_sums = true;
  for ( unsigned i = 0; i < spec.width; ++i )
  {
    spec.x_arrivals.push_back( i / 4u );
    spec.y_arrivals.push_back( i % 4u );
  }
  auto const r = build_adder( spec );

  check_options opts;
  opts.random_vectors = 100000u;
  auto const v = check_adder( r.circ, spec, opts );

  for ( std::size_t i = 0; i < r.carries.size(); ++i )
  {
    std::printf( "c%-3zu path length %3zu  delay %3llu\n", i + 1u, r.carries[i].path_length,
                 static_cast<unsigned long long>( r.carries[i].delay ) );
  }
  std::printf( "circuit delay %llu, size %zu, %s on %llu vectors\n",
               static_cast<unsigned long long>( r.timing.circuit_delay ), r.timing.size,
               v.equivalent ? "equivalent" : "NOT equivalent", static_cast<unsigned long long>( v.vectors ) );
  return v.equivalent ? 0 : 1;
}
