#pragma once

namespace sprecov {

// Exit codes: 0 success, 1 property failure (validate/regimes),
// 2 domain error (e.g. unsatisfiable-in-domain, enumeration cap),
// 64 usage error.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitDomainError = 2;
inline constexpr int kExitUsage = 64;

int run_cli(int argc, const char* const* argv);

}  // namespace sprecov
