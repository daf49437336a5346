#include "divzeta/divisor_sieve.hpp"

#include "divzeta/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <fmt/format.h>
#include <zlib.h>

static_assert(std::endian::native == std::endian::little,
              "table serialization assumes a little-endian host");

namespace divzeta {

DivisorTable::DivisorTable(unsigned k, std::vector<std::uint64_t> values)
    : k_(k), values_(std::move(values)) {
  if (k_ == 0) throw DomainError("DivisorTable: k must be >= 1");
  if (values_.size() < 2) throw DomainError("DivisorTable: n_max must be >= 1");
  values_[0] = 0;
}

std::uint64_t DivisorTable::at(std::uint64_t n) const {
  if (n == 0 || n > n_max())
    throw RangeError(fmt::format("DivisorTable::at: n = {} outside [1, {}]", n, n_max()));
  return values_[n];
}

std::uint64_t DivisorTable::max_value(std::uint64_t upto) const {
  upto = std::min(upto, n_max());
  return *std::max_element(values_.begin() + 1, values_.begin() + static_cast<std::ptrdiff_t>(upto) + 1);
}

DivisorTable sieve_dk(unsigned k, std::uint64_t n_max, const SieveConfig& config) {
  if (k == 0) throw DomainError("sieve_dk: k must be >= 1");
  if (n_max == 0) throw DomainError("sieve_dk: n_max must be >= 1");
  if (n_max > config.max_entries)
    throw CapacityError(fmt::format("sieve_dk: n_max = {} exceeds the memory budget of {} entries",
                                    n_max, config.max_entries));

  std::vector<std::uint64_t> cur(n_max + 1, 1);
  cur[0] = 0;
  if (k == 1) return DivisorTable(k, std::move(cur));

  std::vector<std::uint64_t> next(n_max + 1);
  for (unsigned pass = 1; pass < k; ++pass) {
    std::fill(next.begin(), next.end(), 0);
    for (std::uint64_t d = 1; d <= n_max; ++d) {
      const std::uint64_t v = cur[d];
      for (std::uint64_t m = d; m <= n_max; m += d) next[m] += v;
    }
    cur.swap(next);
  }
  return DivisorTable(k, std::move(cur));
}

std::uint64_t dk_single(unsigned k, std::uint64_t n) {
  if (k == 0) throw DomainError("dk_single: k must be >= 1");
  if (n == 0) throw DomainError("dk_single: n must be >= 1");

  // binom(e + k - 1, k - 1), built up one exponent at a time so every
  // intermediate quotient is exact.
  auto tuples = [k](std::uint64_t e) {
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= e; ++i) c = c * (k - 1 + i) / i;
    return c;
  };

  std::uint64_t result = 1;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) result *= tuples(e);
  }
  if (n > 1) result *= k;
  return result;
}

namespace {

struct Header {
  std::uint32_t version;
  std::uint32_t k;
  std::uint64_t n_max;
};
static_assert(sizeof(Header) == 16);

constexpr std::size_t kMagicSize = sizeof(kTableMagic);
constexpr std::size_t kCrcSize = sizeof(std::uint32_t);

std::uint32_t crc_update(std::uint32_t crc, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const Bytef*>(data);
  // zlib takes uInt lengths; feed large payloads in slices.
  while (len > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(len, 1u << 30));
    crc = static_cast<std::uint32_t>(::crc32(crc, bytes, chunk));
    bytes += chunk;
    len -= chunk;
  }
  return crc;
}

std::uint32_t payload_crc(const Header& header, std::span<const std::uint64_t> body) {
  std::uint32_t crc = static_cast<std::uint32_t>(::crc32(0L, Z_NULL, 0));
  crc = crc_update(crc, &header, sizeof header);
  return crc_update(crc, body.data(), body.size_bytes());
}

} // namespace

std::uint32_t table_checksum(const DivisorTable& table) {
  const Header header{kTableVersion, table.k(), table.n_max()};
  return payload_crc(header, table.values().subspan(1));
}

void save_table(const DivisorTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_table: cannot open " + path.string());

  const Header header{kTableVersion, table.k(), table.n_max()};
  const auto body = table.values().subspan(1);
  const std::uint32_t crc = payload_crc(header, body);

  out.write(kTableMagic, kMagicSize);
  out.write(reinterpret_cast<const char*>(&header), sizeof header);
  out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size_bytes()));
  out.write(reinterpret_cast<const char*>(&crc), sizeof crc);
  if (!out) throw std::runtime_error("save_table: write failed for " + path.string());
}

DivisorTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_table: cannot open " + path.string());

  char magic[kMagicSize];
  Header header{};
  if (!in.read(magic, kMagicSize) || std::memcmp(magic, kTableMagic, kMagicSize) != 0)
    throw FormatError("load_table: bad magic in " + path.string());
  if (!in.read(reinterpret_cast<char*>(&header), sizeof header))
    throw FormatError("load_table: truncated header in " + path.string());
  if (header.version != kTableVersion)
    throw FormatError(fmt::format("load_table: unsupported version {}", header.version));
  if (header.k == 0 || header.n_max == 0)
    throw FormatError("load_table: header declares an empty table");

  const auto file_size = std::filesystem::file_size(path);
  const std::uint64_t expected = kMagicSize + sizeof header + kCrcSize + 8 * header.n_max;
  if (header.n_max > (file_size / 8) || file_size != expected)
    throw FormatError(fmt::format("load_table: size {} does not match n_max = {} (expected {})",
                                  file_size, header.n_max, expected));

  std::vector<std::uint64_t> values(header.n_max + 1);
  std::uint32_t stored_crc = 0;
  in.read(reinterpret_cast<char*>(values.data() + 1), static_cast<std::streamsize>(8 * header.n_max));
  in.read(reinterpret_cast<char*>(&stored_crc), sizeof stored_crc);
  if (!in) throw FormatError("load_table: truncated payload in " + path.string());

  const std::uint32_t crc = payload_crc(header, std::span<const std::uint64_t>(values).subspan(1));
  if (crc != stored_crc)
    throw FormatError(fmt::format("load_table: checksum mismatch ({:08x} != {:08x})", crc, stored_crc));

  return DivisorTable(header.k, std::move(values));
}

} // namespace divzeta
