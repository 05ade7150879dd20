#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "psl/scanner.hpp"

namespace psl {

/// Header `m,k,q`, one row per hit, q in decimal.
void write_hits_csv(std::ostream& os, std::span<const PrimeHit> hits);
std::vector<PrimeHit> read_hits_csv(std::istream& is);

/// Single-line JSON object; integers are decimal strings.
std::string checkpoint_to_json(const Checkpoint& checkpoint);
Checkpoint checkpoint_from_json(const std::string& text);

/// Writes through a temporary file and rename so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

std::vector<PrimeHit> load_hits(const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace psl
