#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mottlab/errors.hpp"

namespace mottlab {

// Write content to path via a temporary sibling file and atomic rename, so
// a failed run never leaves a partial artifact.
inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace mottlab
