#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "shafstats/curve.hpp"

namespace shafstats {

inline constexpr int kCacheFormatVersion = 1;

struct CacheManifest {
  int format_version = kCacheFormatVersion;
  i64 curve_a = 0;
  i64 curve_b = 0;
  i64 delta = 0;
  u64 xmax = 0;
  u64 record_count = 0;
  u64 checksum = 0;
};

// 64-bit FNV-1a.
u64 fnv1a64(std::string_view bytes);

// Canonical record payload: one "p,ap\n" line per record.
std::string record_payload(const ApTable& table);

// Writes to a sibling temporary file and renames it into place.
void save(const ApTable& table, const std::filesystem::path& path);

CacheManifest read_manifest(const std::filesystem::path& path);

// Throws Io, Format, Version, CurveMismatch or Checksum.
ApTable load(const std::filesystem::path& path, const Curve& expected_curve);

// Adds the primes in (table.xmax, new_x]; nothing below is recomputed.
ApTable extend(const ApTable& table, u64 new_x, const TraceOptions& options = {});

}  // namespace shafstats
