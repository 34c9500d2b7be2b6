#pragma once

#include <string>

namespace shore {

// Shortest round-trip decimal form of a double; keeps CSV output
// byte-stable across runs.
std::string format_number(double v);

}  // namespace shore
