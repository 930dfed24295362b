#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "roquette/group.hpp"
#include "roquette/lattice.hpp"

namespace roq {

/// On-disk subgroup lattices, one file per (order, table hash).
///
/// Layout, all integers little-endian:
///   u32 magic "RQLT", u32 version, u64 order, u64 table hash, u64 count,
///   then per subgroup: u32 length, length x u32 sorted element indices.
class LatticeCache {
 public:
  static constexpr std::uint32_t kMagic = 0x544c5152;  // "RQLT"
  static constexpr std::uint32_t kVersion = 1;

  explicit LatticeCache(std::filesystem::path dir, std::ostream* warnings = &std::cerr)
      : dir_(std::move(dir)), warn_(warnings) {}

  const std::filesystem::path& directory() const { return dir_; }

  std::filesystem::path path_for(const Group& g) const {
    std::ostringstream name;
    name << g.order() << '-' << std::hex << g.table_hash() << ".lat";
    return dir_ / name.str();
  }

  void store(const Group& g, const SubgroupLattice& lat) const {
    std::filesystem::create_directories(dir_);
    const auto target = path_for(g);
    // Write to a temporary name first so readers never see a partial file.
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cache: cannot write " + tmp.string());
      put32(out, kMagic);
      put32(out, kVersion);
      put64(out, g.order());
      put64(out, g.table_hash());
      put64(out, lat.size());
      for (const auto& s : lat.subgroups) {
        put32(out, static_cast<std::uint32_t>(s.elements.size()));
        for (Elem x : s.elements) put32(out, x);
      }
      if (!out) throw Error("cache: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }

  /// nullopt on a miss. Version, hash and structural problems also count as
  /// misses, with a warning.
  std::optional<SubgroupLattice> load(const Group& g) const {
    const auto file = path_for(g);
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::uint32_t magic = 0, version = 0;
    std::uint64_t order = 0, hash = 0, count = 0;
    if (!get32(in, magic) || magic != kMagic) return miss(file, "bad magic");
    if (!get32(in, version) || version != kVersion) return miss(file, "version mismatch");
    if (!get64(in, order) || order != g.order()) return miss(file, "order mismatch");
    if (!get64(in, hash) || hash != g.table_hash()) return miss(file, "table hash mismatch");
    if (!get64(in, count) || count == 0) return miss(file, "truncated header");
    std::vector<SubgroupSet> subgroups;
    subgroups.reserve(std::min<std::uint64_t>(count, 1u << 16));
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint32_t len = 0;
      if (!get32(in, len) || len == 0 || len > order || order % len != 0) return miss(file, "corrupt entry");
      std::vector<Elem> elems(len);
      for (auto& x : elems)
        if (!get32(in, x) || x >= order) return miss(file, "corrupt entry");
      if (std::adjacent_find(elems.begin(), elems.end(), std::greater_equal<>()) != elems.end() || elems.front() != 0)
        return miss(file, "corrupt entry");
      auto s = subgroup_from_elements(g, std::move(elems));
      if (!is_valid_subgroup(g, s)) return miss(file, "entry is not a subgroup");
      subgroups.push_back(std::move(s));
    }
    if (in.peek() != std::char_traits<char>::eof()) return miss(file, "trailing bytes");
    try {
      return finalize_lattice(g, std::move(subgroups));
    } catch (const Error& e) {
      return miss(file, e.what());
    }
  }

 private:
  std::filesystem::path dir_;
  std::ostream* warn_;

  std::nullopt_t miss(const std::filesystem::path& file, const std::string& why) const {
    if (warn_) *warn_ << "warning: ignoring lattice cache " << file.string() << ": " << why << '\n';
    return std::nullopt;
  }

  static void put32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
  }
  static void put64(std::ostream& out, std::uint64_t v) {
    put32(out, static_cast<std::uint32_t>(v));
    put32(out, static_cast<std::uint32_t>(v >> 32));
  }
  static bool get32(std::istream& in, std::uint32_t& v) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
    return true;
  }
  static bool get64(std::istream& in, std::uint64_t& v) {
    std::uint32_t lo = 0, hi = 0;
    if (!get32(in, lo) || !get32(in, hi)) return false;
    v = lo | (std::uint64_t{hi} << 32);
    return true;
  }
};

/// Loads from the cache when present, otherwise enumerates and stores.
/// `cached` reports which path was taken.
inline SubgroupLattice lattice_with_cache(const Group& g, const LatticeCache* cache, const EnumerationOptions& opt = {},
                                          bool* cached = nullptr) {
  if (cached) *cached = false;
  if (cache) {
    if (auto lat = cache->load(g)) {
      if (cached) *cached = true;
      return std::move(*lat);
    }
  }
  auto lat = enumerate_subgroups(g, opt);
  if (cache) cache->store(g, lat);
  return lat;
}

}  // namespace roq
