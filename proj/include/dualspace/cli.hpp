#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dualspace {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand; `args` excludes the program name.
///
///   verify-algebra <model>   Fock, superoperator, parity, v/y and adjoint reports
///   bargmann --dim N         Bargmann biorthonormality and generating identity
///   kernel ...               Gaussian kernels, composition chains, isometry defects
///   map <model>              Liouvillian in canonical-map notation
///   evolve <model>           time evolution, writes trajectory.csv
///   steady-state <model>     null vector of the Liouvillian
///
/// Global flags: --tol, --out (default "."), --max-dim (default 4096).
/// Returns 0 when every check passes, 1 when one fails and 2 for usage or
/// input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualspace
