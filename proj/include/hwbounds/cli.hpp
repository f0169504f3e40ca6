#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hwb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // selftest disagreement
inline constexpr int kExitInput = 2;
inline constexpr int kExitDisconnected = 3;

/// Entry point of the hwbounds tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// printf("%.10g") with -0 printed as 0.
std::string format_number(double x);

}  // namespace hwb
