#pragma once

#include <iostream>
#include <string>
#include <vector>

#include "oafem/mesh.hpp"
#include "oafem/problem.hpp"

namespace oafem {

// Problem description read from a "key = value" config file.  Lines starting
// with '#' and blank lines are ignored.  Required keys: f, chi, g; optional:
// exact, geometry (polygonal | unit_circle).  Field values use the
// make_field syntax, e.g. "constant:-12" or "quadratic_bowl".
struct SolveConfig {
    ProblemData problem;
    GeometryTag geometry = GeometryTag::Polygonal;
};

SolveConfig parse_problem_config(const std::string& path);

// Command line driver.  Returns 0 on success, 1 on bad input or usage
// errors, 2 when an iterative solver fails to converge.
int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace oafem
