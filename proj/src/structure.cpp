#include "plageval/structure.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <unordered_map>

#include "plageval/error.hpp"

namespace plageval {

namespace {

constexpr std::uint64_t kHashBase = 0x100000001B3ULL;

struct Match {
  std::size_t a;
  std::size_t b;
  std::size_t length;
};

// Top of the queue is the longest match, then lowest start in a, then in b.
struct MatchOrder {
  bool operator()(const Match& x, const Match& y) const {
    if (x.length != y.length) return x.length < y.length;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

class Tiler {
 public:
  Tiler(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
        const TilingOptions& options)
      : a_(a), b_(b), marked_a_(a.size(), false), marked_b_(b.size(), false),
        options_(options) {}

  TileSet run() {
    TileSet result;
    result.min_match = options_.min_match;
    const std::size_t min_match = options_.min_match;
    std::size_t search = std::max(options_.initial_search_length, min_match);

    for (;;) {
      std::vector<Match> found;
      const std::size_t longest = scan(search, found);
      if (longest > 2 * search) {
        search = longest;
        continue;
      }
      mark_matches(search, found, result);
      if (search > 2 * min_match) {
        search /= 2;
      } else if (search > min_match) {
        search = min_match;
      } else {
        break;
      }
    }
    return result;
  }

 private:
  // Collects every maximal unmarked match of at least `search` tokens and
  // returns the longest length seen (0 if none).
  std::size_t scan(std::size_t search, std::vector<Match>& found) const {
    if (a_.size() < search || b_.size() < search) return 0;

    std::uint64_t drop = 1;  // kHashBase^(search - 1)
    for (std::size_t i = 1; i < search; ++i) drop *= kHashBase;

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> windows;
    for_each_window(b_, marked_b_, search, drop, [&](std::size_t start, std::uint64_t h) {
      windows[h].push_back(start);
    });

    std::size_t longest = 0;
    for_each_window(a_, marked_a_, search, drop, [&](std::size_t i, std::uint64_t h) {
      const auto hit = windows.find(h);
      if (hit == windows.end()) return;
      for (const std::size_t j : hit->second) {
        if (!std::equal(a_.begin() + i, a_.begin() + i + search, b_.begin() + j)) continue;
        if (i > 0 && j > 0 && !marked_a_[i - 1] && !marked_b_[j - 1] &&
            a_[i - 1] == b_[j - 1]) {
          continue;  // not left-maximal; found from an earlier start
        }
        std::size_t length = search;
        while (i + length < a_.size() && j + length < b_.size() &&
               !marked_a_[i + length] && !marked_b_[j + length] &&
               a_[i + length] == b_[j + length]) {
          ++length;
        }
        found.push_back({i, j, length});
        longest = std::max(longest, length);
      }
    });
    return longest;
  }

  // Calls visit(start, hash) for each window of `width` unmarked tokens.
  template <typename Visit>
  static void for_each_window(std::span<const std::uint32_t> seq,
                              const std::vector<bool>& marked, std::size_t width,
                              std::uint64_t drop, Visit visit) {
    std::uint64_t h = 0;
    std::size_t run = 0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (marked[k]) {
        h = 0;
        run = 0;
        continue;
      }
      const std::uint64_t in = static_cast<std::uint64_t>(seq[k]) + 1;
      if (run >= width) {
        const std::uint64_t out = static_cast<std::uint64_t>(seq[k - width]) + 1;
        h -= out * drop;
      }
      h = h * kHashBase + in;
      ++run;
      if (run >= width) visit(k + 1 - width, h);
    }
  }

  void mark_matches(std::size_t search, const std::vector<Match>& found, TileSet& result) {
    std::priority_queue<Match, std::vector<Match>, MatchOrder> queue(found.begin(),
                                                                     found.end());
    while (!queue.empty()) {
      const Match m = queue.top();
      queue.pop();

      bool occluded = false;
      for (std::size_t k = 0; k < m.length && !occluded; ++k) {
        occluded = marked_a_[m.a + k] || marked_b_[m.b + k];
      }
      if (!occluded) {
        for (std::size_t k = 0; k < m.length; ++k) {
          marked_a_[m.a + k] = true;
          marked_b_[m.b + k] = true;
        }
        result.tiles.push_back({m.a, m.b, m.length});
        result.coverage += m.length;
        continue;
      }
      // Unmarked remainders on the same diagonal are still maximal matches;
      // requeue the ones long enough for this round.
      std::size_t run_start = 0;
      std::size_t run = 0;
      for (std::size_t k = 0; k <= m.length; ++k) {
        const bool free = k < m.length && !marked_a_[m.a + k] && !marked_b_[m.b + k];
        if (free) {
          if (run == 0) run_start = k;
          ++run;
        } else {
          if (run >= search) queue.push({m.a + run_start, m.b + run_start, run});
          run = 0;
        }
      }
    }
  }

  std::span<const std::uint32_t> a_;
  std::span<const std::uint32_t> b_;
  std::vector<bool> marked_a_;
  std::vector<bool> marked_b_;
  TilingOptions options_;
};

}  // namespace

TileSet rkr_gst_tiles(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      const TilingOptions& options) {
  if (options.min_match < 1) {
    throw Error("InvalidMinMatch", "minimum match length must be at least 1");
  }
  return Tiler(a, b, options).run();
}

TileSet rkr_gst_tiles(const TokenSequence& a, const TokenSequence& b,
                      std::size_t min_match) {
  const EncodedPair encoded = encode_pair(a, b);
  return rkr_gst_tiles(encoded.a, encoded.b, TilingOptions{min_match});
}

double sba_similarity(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      std::size_t min_match) {
  if (a.empty() && b.empty()) {
    throw Error("EmptyPair", "structure similarity of two empty sequences");
  }
  // Greedy tie-breaking looks at positions in `a` first; fix the roles.
  const bool swap = b.size() < a.size() ||
                    (b.size() == a.size() &&
                     std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()));
  const TileSet tiles =
      swap ? rkr_gst_tiles(b, a, TilingOptions{min_match})
           : rkr_gst_tiles(a, b, TilingOptions{min_match});
  const double value = 2.0 * static_cast<double>(tiles.coverage) /
                       static_cast<double>(a.size() + b.size());
  return std::clamp(value, 0.0, 1.0);
}

SimilarityDegree sba_similarity(const TokenSequence& a, const TokenSequence& b,
                                std::size_t min_match) {
  const EncodedPair encoded = encode_pair(a, b);
  return {sba_similarity(encoded.a, encoded.b, min_match), Detector::SBA};
}

void dump_tiles(std::ostream& out, const TileSet& tiles) {
  for (const Tile& t : tiles.tiles) {
    out << t.start_a << ' ' << t.start_b << ' ' << t.length << '\n';
  }
}

}  // namespace plageval
