#pragma once

/* Binary sidecar persistence for landmark tables, keyed by (map content hash,
 * seed, count).  Little-endian fixed-width fields; a stale or mismatched file
 * is simply ignored and rebuilt.
 *
 * Cache directory resolution: $MGPF_CACHE_DIR if set, else the map file's
 * directory, else the current directory.
 */

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "heuristic.hpp"

namespace mgpf {

inline constexpr char kLandmarkMagic[8] = {'M', 'G', 'P', 'F',
                                           'A', 'L', 'T', '1'};

namespace detail {

template <typename T>
void write_le(std::ostream& out, T value) {
  auto v = static_cast<std::uint64_t>(value);
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, sizeof(T));
}

template <typename T>
bool read_le(std::istream& in, T& value) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) return false;
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i]))
         << (8 * i);
  value = static_cast<T>(v);
  return true;
}

}  // namespace detail

inline std::filesystem::path landmark_cache_dir(
    const std::string& map_path = {}) {
  if (const char* env = std::getenv("MGPF_CACHE_DIR"); env && *env)
    return std::filesystem::path(env);
  if (!map_path.empty()) {
    std::filesystem::path p(map_path);
    if (p.has_parent_path() && std::filesystem::exists(p))
      return p.parent_path();
  }
  return std::filesystem::current_path();
}

inline std::filesystem::path landmark_cache_file(const GridGraph& graph,
                                                 std::size_t count,
                                                 std::uint64_t seed,
                                                 const std::string& map_path = {}) {
  char name[96];
  std::snprintf(name, sizeof(name), "alt-%016llx-s%llu-c%zu.bin",
                static_cast<unsigned long long>(graph.content_hash()),
                static_cast<unsigned long long>(seed), count);
  return landmark_cache_dir(map_path) / name;
}

inline void save_landmarks(const LandmarkTable& table,
                           const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out.write(kLandmarkMagic, sizeof(kLandmarkMagic));
  detail::write_le<std::uint64_t>(out, table.map_hash);
  detail::write_le<std::uint64_t>(out, table.seed);
  detail::write_le<std::uint64_t>(out, table.requested);
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.landmarks.size()));
  std::uint32_t nodes =
      table.dist.empty() ? 0 : static_cast<std::uint32_t>(table.dist[0].size());
  detail::write_le<std::uint32_t>(out, nodes);
  for (std::size_t i = 0; i < table.landmarks.size(); ++i) {
    detail::write_le<std::int32_t>(out, table.landmarks[i]);
    for (Cost c : table.dist[i]) detail::write_le<std::int64_t>(out, c);
  }
  if (!out) throw std::runtime_error("short write to " + file.string());
}

// Returns the table only when the file exists and its key matches exactly.
inline std::optional<LandmarkTable> load_landmarks(
    const std::filesystem::path& file, std::uint64_t map_hash,
    std::size_t count, std::uint64_t seed) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      !std::equal(magic, magic + 8, kLandmarkMagic))
    return std::nullopt;
  LandmarkTable table;
  std::uint64_t requested = 0;
  std::uint32_t stored = 0, nodes = 0;
  if (!detail::read_le(in, table.map_hash) || !detail::read_le(in, table.seed) ||
      !detail::read_le(in, requested) || !detail::read_le(in, stored) ||
      !detail::read_le(in, nodes))
    return std::nullopt;
  table.requested = static_cast<std::size_t>(requested);
  if (table.map_hash != map_hash || table.seed != seed ||
      table.requested != count)
    return std::nullopt;
  table.landmarks.resize(stored);
  table.dist.assign(stored, std::vector<Cost>(nodes));
  for (std::uint32_t i = 0; i < stored; ++i) {
    if (!detail::read_le(in, table.landmarks[i])) return std::nullopt;
    for (std::uint32_t u = 0; u < nodes; ++u)
      if (!detail::read_le(in, table.dist[i][u])) return std::nullopt;
  }
  return table;
}

// Cache-through accessor used by the CLI and the benchmark runner.
inline LandmarkTable load_or_build_landmarks(const GridGraph& graph,
                                             std::size_t count,
                                             std::uint64_t seed,
                                             const std::string& map_path = {},
                                             bool rebuild = false) {
  auto file = landmark_cache_file(graph, count, seed, map_path);
  if (!rebuild)
    if (auto cached = load_landmarks(file, graph.content_hash(), count, seed))
      return *cached;
  LandmarkTable table = select_landmarks(graph, count, seed);
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  save_landmarks(table, file);
  return table;
}

}  // namespace mgpf
