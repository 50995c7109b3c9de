/*
 * Copyright 2026 The ovalue Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// On-disk DBT pool cache.
//
// Layout (all integers little-endian):
//   8 bytes   magic "OVDBTP01"
//   u32       rng id length, followed by the id bytes
//   u64       seed
//   u32       depth
//   u64       sample count G
//   G * J * 2 doubles as IEEE-754 bit patterns (u64): alphas then betas of
//             each sample, breadth-first node order

#pragma once

#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>

#include "ovalue/dbt.hpp"

namespace ovalue {

namespace detail {

inline constexpr std::array<char, 8> kPoolMagic = {'O', 'V', 'D', 'B',
                                                   'T', 'P', '0', '1'};

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
  out.write(bytes, 8);
}

inline void put_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
  out.write(bytes, 4);
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw std::runtime_error("pool cache is truncated");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

inline std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
    throw std::runtime_error("pool cache is truncated");
  }
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace detail

inline void write_pool(std::ostream& out, const DbtPool& pool) {
  out.write(detail::kPoolMagic.data(), detail::kPoolMagic.size());
  detail::put_u32(out, static_cast<std::uint32_t>(pool.rng_id.size()));
  out.write(pool.rng_id.data(), static_cast<std::streamsize>(pool.rng_id.size()));
  detail::put_u64(out, pool.seed);
  detail::put_u32(out, static_cast<std::uint32_t>(pool.depth));
  detail::put_u64(out, pool.samples.size());
  for (const auto& s : pool.samples) {
    for (double a : s.alphas) detail::put_u64(out, std::bit_cast<std::uint64_t>(a));
    for (double b : s.betas) detail::put_u64(out, std::bit_cast<std::uint64_t>(b));
  }
}

inline DbtPool read_pool(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != detail::kPoolMagic) {
    throw std::runtime_error("not a DBT pool cache");
  }
  DbtPool pool;
  const std::uint32_t id_len = detail::get_u32(in);
  if (id_len > 256) throw std::runtime_error("pool cache has a corrupt rng id");
  pool.rng_id.assign(id_len, '\0');
  if (!in.read(pool.rng_id.data(), id_len)) {
    throw std::runtime_error("pool cache is truncated");
  }
  pool.seed = detail::get_u64(in);
  pool.depth = static_cast<int>(detail::get_u32(in));
  const std::size_t nodes = dbt_node_count(pool.depth);
  const std::uint64_t count = detail::get_u64(in);
  pool.samples.reserve(count);
  for (std::uint64_t g = 0; g < count; ++g) {
    DbtSample s;
    s.depth = pool.depth;
    s.alphas.resize(nodes);
    s.betas.resize(nodes);
    for (auto& a : s.alphas) a = std::bit_cast<double>(detail::get_u64(in));
    for (auto& b : s.betas) b = std::bit_cast<double>(detail::get_u64(in));
    pool.samples.push_back(std::move(s));
  }
  return pool;
}

/// Writes to a sibling temporary file, then renames over `path`, so
/// concurrent readers see either the old file or the complete new one.
inline void save_pool(const std::filesystem::path& path, const DbtPool& pool) {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  std::filesystem::path tmp = path;
  tmp += ".tmp-" + std::to_string(stamp) + "-" + std::to_string(tid);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write pool cache " + tmp.string());
    write_pool(out, pool);
    out.flush();
    if (!out) throw std::runtime_error("failed writing pool cache " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot install pool cache " + path.string() +
                             ": " + ec.message());
  }
}

inline DbtPool load_pool(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open pool cache " + path.string());
  return read_pool(in);
}

/// Loads the cached pool when its key matches (rng id, seed, depth, G);
/// otherwise builds the pool and replaces the cache.
inline DbtPool load_or_build_pool(const std::filesystem::path& path, int depth,
                                  std::size_t count, std::uint64_t seed) {
  if (std::filesystem::exists(path)) {
    try {
      DbtPool cached = load_pool(path);
      if (cached.rng_id == kRngId && cached.seed == seed &&
          cached.depth == depth && cached.size() == count) {
        return cached;
      }
    } catch (const std::exception&) {
      // Unreadable caches are rebuilt below.
    }
  }
  DbtPool pool = build_pool(depth, count, seed);
  save_pool(path, pool);
  return pool;
}

}  // namespace ovalue
