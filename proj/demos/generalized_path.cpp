/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*
  Synthesizes the generalized path t0 & (t1 | (t2 | (t3 | (t4 | (t5 & ...)))))
  whose inputs fall into five groups of sizes 1, 4, 2, 1 and 4, checks it
  against direct evaluation on all 4096 assignments and prints it as DOT.
*/

#include <aopsynth/aopsynth.hpp>

#include <iostream>
#include <string>

int main()
{
  using namespace aopsynth;

  generalized_instance inst;
  for ( unsigned i = 0; i < 12u; ++i )
  {
    inst.inputs.push_back( { "t" + std::to_string( i ), i % 3u == 0u ? 1u : 0u } );
  }
  inst.ops = parse_ops( "&||||&&|&&&" );

  auto const r = synth_generalized( inst );
  auto const v = check_equivalence( r.circ, inst );
  std::cerr << "groups " << inst.groups().size() << ", delay " << r.timing.circuit_delay << ", size "
            << r.timing.size << ", " << ( v.equivalent ? "equivalent" : "NOT equivalent" ) << "\n";
  std::cout << write_dot( r.circ );
  return v.equivalent ? 0 : 1;
}
