/**
 * `.olid` model files.
 *
 * Little-endian, fixed-width layout:
 *
 *   offset  size  field
 *   0       4     magic "OLID"
 *   4       1     format version (1)
 *   5       1     hash_bits
 *   6       2     reserved, zero
 *   8       4     hash seed (u32)
 *   12      4     ngram order (u32)
 *   16      8     nu (f64)
 *   24      8     tol (f64)
 *   32      8     max_iter (u64)
 *   40      8     rho (f64)
 *   48      8     n_train (u64)
 *   56      8     sv_count (u64)
 *   64      8     solver iterations (u64)
 *   72      1     converged (0/1)
 *   73      3     reserved, zero
 *   76      4     nnz (u32)
 *   80      12*k  nnz (u32 index, f64 value) pairs, ascending index
 *   end-4   4     CRC-32 of every preceding byte
 *
 * Doubles are stored as their IEEE-754 bit patterns, so a round trip is
 * bit-exact.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "olid/ocsvm.hpp"

namespace olid {

inline constexpr std::uint8_t kModelFormatVersion = 1;
inline constexpr std::size_t kModelHeaderSize = 80;

std::string serialize_model(const OneClassModel& model);

/// Throws TruncatedFile, VersionMismatch, ChecksumMismatch or FormatError.
OneClassModel deserialize_model(std::span<const char> bytes);

void save_model(const OneClassModel& model, const std::filesystem::path& path);
/// Throws IoError when the file cannot be read, plus the deserialize errors.
OneClassModel load_model(const std::filesystem::path& path);

}  // namespace olid
