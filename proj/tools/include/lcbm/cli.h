#ifndef LCBM_CLI_H_
#define LCBM_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace lcbm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitViolated = 3;

// Entry point of the `lcbm` tool. Subcommands: bound, sup, verify, audit,
// oracle-compare. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace lcbm

#endif  // LCBM_CLI_H_
