#pragma once

#include <istream>
#include <string>

#include "genfrac/cauchy.hpp"

namespace genfrac {

/// Reads a Cauchy problem from `key=value` lines:
///
///     kernel=prabhakar:rho=1,omega=-1
///     alpha=0.5
///     beta=1
///     gamma=0.5
///     constants=[0]
///     rhs=1 + 0*u            expression in t and u
///     lipschitz=1
///     interval=[0,1]
///
/// Blank lines and lines starting with '#' are ignored. beta defaults to 0
/// and interval to [0,1]; every other key is required. Throws ParseError
/// carrying the line number.
CauchyProblem read_problem(std::istream& in);

CauchyProblem read_problem_file(const std::string& path);

}  // namespace genfrac
