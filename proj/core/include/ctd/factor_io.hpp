#pragma once

#include <filesystem>

#include "ctd/factors.hpp"

namespace ctd {

/// Persists factors as a directory bundle:
///   manifest.txt  magic, format version, tensor shape, mode, epsilon,
///                 seed, kept fiber ids (all indices 1-based)
///   R.tsv         row col value triples
///   C.tsv         index tuple + value per entry
///   U.tsv         dense rows, tab-separated
/// Floats use 17 significant digits, so load(save(f)) == f bit for bit.
void save_factors(const LRFactors& factors, const std::filesystem::path& dir);

/// Throws IoError on a missing member file, bad magic, unsupported version,
/// or inconsistent dimensions.
LRFactors load_factors(const std::filesystem::path& dir);

}  // namespace ctd
