#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "plageval/lexer.hpp"
#include "plageval/similarity.hpp"

namespace plageval {

inline constexpr std::size_t kDefaultMinMatch = 2;
inline constexpr std::size_t kDefaultInitialSearchLength = 20;

/// A matched run: a[start_a, start_a + length) == b[start_b, start_b + length).
struct Tile {
  std::size_t start_a = 0;
  std::size_t start_b = 0;
  std::size_t length = 0;

  bool operator==(const Tile&) const = default;
};

/// Tiles in the order they were claimed. Tiles never overlap in either
/// sequence and every tile is at least `min_match` long.
struct TileSet {
  std::vector<Tile> tiles;
  std::size_t coverage = 0;
  std::size_t min_match = kDefaultMinMatch;
};

struct TilingOptions {
  std::size_t min_match = kDefaultMinMatch;
  std::size_t initial_search_length = kDefaultInitialSearchLength;
};

/// Running-Karp-Rabin Greedy-String-Tiling.
///
/// The result is the greedy tiling: the longest unmarked common run is
/// claimed first, ties going to the lowest start in `a` and then in `b`,
/// until no run of at least `min_match` tokens remains. Karp-Rabin hashes
/// only nominate candidates; every match is verified token by token.
///
/// Throws Error("InvalidMinMatch") when `min_match` is zero.
TileSet rkr_gst_tiles(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      const TilingOptions& options = {});
TileSet rkr_gst_tiles(const TokenSequence& a, const TokenSequence& b,
                      std::size_t min_match = kDefaultMinMatch);

/// 2 * coverage / (|a| + |b|). The pair is put into a canonical order first,
/// so the result does not depend on argument order.
///
/// Throws Error("EmptyPair") when both sequences are empty.
double sba_similarity(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      std::size_t min_match = kDefaultMinMatch);
SimilarityDegree sba_similarity(const TokenSequence& a, const TokenSequence& b,
                                std::size_t min_match = kDefaultMinMatch);

/// One `start_a start_b length` line per tile.
void dump_tiles(std::ostream& out, const TileSet& tiles);

}  // namespace plageval
