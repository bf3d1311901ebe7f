#ifndef RELILAT_COMMANDS_HPP
#define RELILAT_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace relilat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

/// Runs `relilat <command> <specfile> [flags]` with `args` excluding the program name.
/// Results go to `out`; failures print a single "error[<kind>]: ..." line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relilat

#endif  // RELILAT_COMMANDS_HPP
