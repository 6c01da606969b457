// Error of LLEEI(k+1) against an RK4 reference for the scalar oscillator
// y'' + y / eps^2 = g(y, t), over a range of step sizes. Prints a CSV report.
//
//   lleei_sample [eps] [k]

#include "lleei/io.hpp"
#include "lleei/lleei.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <vector>

int main(int argc, char** argv) {
  const double eps = argc > 1 ? std::atof(argv[1]) : 0.25;
  const int k = argc > 2 ? std::atoi(argv[2]) : 2;
  if (!(eps > 0.0) || k < 1) {
    std::cerr << "usage: lleei_sample [eps > 0] [k >= 1]\n";
    return 2;
  }

  const lleei::OscillatorySystem system = lleei::builtin("example1", eps);
  std::vector<double> hs;
  for (int p = 3; p <= 7; ++p) hs.push_back(std::ldexp(1.0, -p));

  const lleei::ErrorReport report = lleei::sweep_h(system, k, hs);
  lleei::io::write_report(std::cout, report);
  for (const auto& check : lleei::assess(report)) {
    std::cout << "# " << check.name << ": ";
    if (check.measured) std::cout << *check.measured;
    std::cout << " (expected " << check.expected << ")\n";
  }
  return 0;
}
