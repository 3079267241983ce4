/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

#include <aopsynth/cli.hpp>

#include <iostream>
#include <string>
#include <vector>

int main( int argc, char** argv )
{
  std::vector<std::string> args( argv + 1, argv + argc );
  return aopsynth::run_cli( std::move( args ), std::cout, std::cerr );
}
