#pragma once

#include <filesystem>
#include <optional>

#include "shore/compression.hpp"
#include "shore/training.hpp"

namespace shore {

// A trained model as persisted by the `train` subcommand.
struct Model {
  std::optional<CompressionMatrix> phi;  // absent for uncompressed models
  Regressor regressor;
};

// Little-endian binary layout:
//   magic "SHOR1"
//   m, K, d           as 64-bit counts (m = 0 marks an uncompressed model)
//   Phi               m*K doubles, row-major (omitted when m = 0)
//   weights           row-major; m x d compressed, K x d uncompressed
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace shore
