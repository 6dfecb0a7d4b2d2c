#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dualspace/lindblad.hpp"
#include "dualspace/types.hpp"

namespace dualspace {

struct EvolutionSpec {
  double t_max = 1.0;
  int steps = 100;
  /// "vacuum", "fock:[i_1,...,i_{m+n}]" or "maximally_mixed".
  std::string initial_state = "vacuum";

  /// steps + 1 equally spaced times from 0 to t_max.
  std::vector<double> sample_times() const;
};

/// Contents of a model file:
///   {"version": 1,
///    "fock": {"m": .., "n": .., "boson_cutoff": ..},
///    "hamiltonian": "<expr>", "lindblads": ["<expr>", ..],
///    "evolution": {"t_max": .., "steps": .., "initial_state": ".."},
///    "observables": ["<expr>", ..]}
/// Only version and fock are required.
struct ModelFile {
  int version = 1;
  LindbladModel model;
  std::string hamiltonian_source;
  std::vector<std::string> lindblad_sources;
  std::optional<EvolutionSpec> evolution;
  std::vector<std::string> observable_sources;
  std::vector<OperatorPolynomial> observables;
};

inline constexpr int kModelFileVersion = 1;

/// Schema problems, expression syntax errors and mode indices outside the
/// Fock bounds raise ConfigError; an odd Hamiltonian raises ParityError and a
/// non-Hermitian one ModelError.
ModelFile parse_model(const std::string& json_text, std::size_t max_dim = kDefaultMaxDimension);
ModelFile load_model(const std::filesystem::path& path,
                     std::size_t max_dim = kDefaultMaxDimension);

/// Density matrix for an initial-state spec; ConfigError when malformed.
CMatrix initial_state(const std::string& spec, const FockSpace& space);

}  // namespace dualspace
