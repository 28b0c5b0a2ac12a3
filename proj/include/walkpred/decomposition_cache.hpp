#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "walkpred/spectral.hpp"

namespace walkpred {

// Binary layout, all integers and floats little-endian:
//   magic "WPSD" | u32 version | u64 n | u32 source tag | u32 reserved | u64 hash
//   | n eigenvalues (f64) | n*n eigenvector entries (f64, row-major)
void write_decomposition(const std::filesystem::path& path, const SpectralDecomposition& dec, std::uint64_t hash);

// Empty when the file is absent or its header does not match (n, source, hash).
// A truncated or corrupt body raises IoError.
std::optional<SpectralDecomposition> read_decomposition(const std::filesystem::path& path, std::uint64_t n,
                                                        SpectralSource source, std::uint64_t hash);

/// Directory of decompositions keyed by the network content hash.
class DecompositionCache {
 public:
  explicit DecompositionCache(std::filesystem::path dir);

  SpectralDecomposition get_or_compute(const Network& net, SpectralSource source) const;
  std::filesystem::path entry_path(std::uint64_t hash, SpectralSource source) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace walkpred
