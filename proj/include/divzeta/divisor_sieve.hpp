#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace divzeta {

/// Dense table of d_k(n) for 1 <= n <= n_max.
///
/// Slot 0 of the backing store holds 0 so that `values()[n] == d_k(n)`;
/// kernels index it directly. Immutable after construction, so a single
/// table may be shared read-only across threads.
class DivisorTable {
public:
  DivisorTable(unsigned k, std::vector<std::uint64_t> values);

  unsigned k() const { return k_; }
  std::uint64_t n_max() const { return values_.size() - 1; }

  std::uint64_t operator[](std::uint64_t n) const { return values_[n]; }
  std::uint64_t at(std::uint64_t n) const;

  /// Length n_max + 1, element 0 is zero.
  std::span<const std::uint64_t> values() const { return values_; }

  std::uint64_t max_value(std::uint64_t upto) const;

  friend bool operator==(const DivisorTable&, const DivisorTable&) = default;

private:
  unsigned k_;
  std::vector<std::uint64_t> values_;
};

struct SieveConfig {
  /// Largest n_max accepted; larger requests raise CapacityError.
  std::uint64_t max_entries = 100'000'000;
};

/// d_k by k - 1 passes of d_j = d_{j-1} * 1 (Dirichlet convolution with the
/// constant function). Each pass is O(N log N).
DivisorTable sieve_dk(unsigned k, std::uint64_t n_max, const SieveConfig& config = {});

/// d_k(n) from the factorization of n: prod binom(e_i + k - 1, k - 1).
/// Independent of the sieve; used as its oracle.
std::uint64_t dk_single(unsigned k, std::uint64_t n);

// On-disk format, little-endian:
//   "DKTB" | u32 version (=1) | u32 k | u64 n_max | n_max x u64 | u32 crc32
// The CRC covers every byte between the magic and the CRC itself.
inline constexpr char kTableMagic[4] = {'D', 'K', 'T', 'B'};
inline constexpr std::uint32_t kTableVersion = 1;

void save_table(const DivisorTable& table, const std::filesystem::path& path);
DivisorTable load_table(const std::filesystem::path& path);

/// CRC32 of the serialized payload, as written by save_table.
std::uint32_t table_checksum(const DivisorTable& table);

} // namespace divzeta
