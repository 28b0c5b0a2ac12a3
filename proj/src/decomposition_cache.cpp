#include "walkpred/decomposition_cache.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "walkpred/error.hpp"

namespace walkpred {

namespace {

constexpr std::array<char, 4> kMagic = {'W', 'P', 'S', 'D'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<unsigned char>& buf, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>(x >> (8 * i)));
}
void put_u64(std::vector<unsigned char>& buf, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>(x >> (8 * i)));
}
std::uint64_t get_u64(const unsigned char* p, int bytes = 8) {
  std::uint64_t x = 0;
  for (int i = 0; i < bytes; ++i) x |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return x;
}

constexpr std::size_t kHeaderSize = 4 + 4 + 8 + 4 + 4 + 8;

}  // namespace

void write_decomposition(const std::filesystem::path& path, const SpectralDecomposition& dec, std::uint64_t hash) {
  const auto n = static_cast<std::uint64_t>(dec.size());
  std::vector<unsigned char> buf;
  buf.reserve(kHeaderSize + 8 * (n + n * n));
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put_u32(buf, kVersion);
  put_u64(buf, n);
  put_u32(buf, static_cast<std::uint32_t>(dec.source()));
  put_u32(buf, 0);
  put_u64(buf, hash);
  for (Eigen::Index i = 0; i < dec.size(); ++i) put_u64(buf, std::bit_cast<std::uint64_t>(dec.eigenvalues()(i)));
  const auto& v = dec.eigenvectors();
  for (Eigen::Index r = 0; r < v.rows(); ++r)
    for (Eigen::Index c = 0; c < v.cols(); ++c) put_u64(buf, std::bit_cast<std::uint64_t>(v(r, c)));

  // Write to a sibling temp file so concurrent readers never see a partial entry.
  auto tmp = path;
  tmp += "." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::optional<SpectralDecomposition> read_decomposition(const std::filesystem::path& path, std::uint64_t n,
                                                        SpectralSource source, std::uint64_t hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<unsigned char, kHeaderSize> header{};
  if (!in.read(reinterpret_cast<char*>(header.data()), header.size())) return std::nullopt;
  if (!std::equal(kMagic.begin(), kMagic.end(), header.begin())) return std::nullopt;
  if (get_u64(header.data() + 4, 4) != kVersion) return std::nullopt;
  if (get_u64(header.data() + 8) != n) return std::nullopt;
  if (get_u64(header.data() + 16, 4) != static_cast<std::uint32_t>(source)) return std::nullopt;
  if (get_u64(header.data() + 24) != hash) return std::nullopt;

  std::vector<unsigned char> body(8 * (n + n * n));
  if (!in.read(reinterpret_cast<char*>(body.data()), static_cast<std::streamsize>(body.size())))
    throw IoError("truncated decomposition cache '" + path.string() + "'");
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::VectorXd values(size);
  Eigen::MatrixXd vectors(size, size);
  const unsigned char* p = body.data();
  for (Eigen::Index i = 0; i < size; ++i, p += 8) values(i) = std::bit_cast<double>(get_u64(p));
  for (Eigen::Index r = 0; r < size; ++r)
    for (Eigen::Index c = 0; c < size; ++c, p += 8) vectors(r, c) = std::bit_cast<double>(get_u64(p));
  return SpectralDecomposition(std::move(values), std::move(vectors), source);
}

DecompositionCache::DecompositionCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory '" + dir_.string() + "': " + ec.message());
}

std::filesystem::path DecompositionCache::entry_path(std::uint64_t hash, SpectralSource source) const {
  char name[64];
  std::snprintf(name, sizeof name, "%016llx-%s.bin", static_cast<unsigned long long>(hash),
                std::string(to_string(source)).c_str());
  return dir_ / name;
}

SpectralDecomposition DecompositionCache::get_or_compute(const Network& net, SpectralSource source) const {
  const std::uint64_t hash = content_hash(net);
  const auto path = entry_path(hash, source);
  if (auto cached = read_decomposition(path, net.node_count(), source, hash)) return std::move(*cached);
  auto dec = decompose(net, source);
  write_decomposition(path, dec, hash);
  return dec;
}

}  // namespace walkpred
