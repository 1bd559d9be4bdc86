#pragma once

// Exact pairwise dot-product tallies over a code with small integer
// coordinates. Points are repacked into blocks of 16 so that one AVX-512 VNNI
// dpbusd step accumulates four coordinates of sixteen dot products at once;
// a portable scalar path produces identical tallies elsewhere.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#if defined(__AVX512F__) && defined(__AVX512VNNI__)
#include <immintrin.h>
#define LATCERT_HAVE_VNNI 1
#else
#define LATCERT_HAVE_VNNI 0
#endif

namespace latcert {

/// Points with int8 coordinates, row-major.
struct IntegerCode {
  int dimension = 0;
  std::vector<std::int8_t> coords;

  std::size_t size() const { return dimension ? coords.size() / static_cast<std::size_t>(dimension) : 0; }
  const std::int8_t* point(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(dimension); }
  long dot(std::size_t i, std::size_t j) const {
    long s = 0;
    for (int k = 0; k < dimension; ++k) s += point(i)[k] * point(j)[k];
    return s;
  }
};

/// Dot value -> number of (x,y) pairs with that value. Small linear set.
struct DotTally {
  std::vector<std::int32_t> values;
  std::vector<std::uint64_t> counts;

  void add(std::int32_t v, std::uint64_t n = 1) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == v) {
        counts[i] += n;
        return;
      }
    }
    values.push_back(v);
    counts.push_back(n);
  }
  void merge(const DotTally& o) {
    for (std::size_t i = 0; i < o.values.size(); ++i) add(o.values[i], o.counts[i]);
  }
  void clear_counts() { std::fill(counts.begin(), counts.end(), 0); }
  std::vector<std::pair<std::int32_t, std::uint64_t>> sorted() const {
    std::vector<std::pair<std::int32_t, std::uint64_t>> r;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (counts[i]) r.emplace_back(values[i], counts[i]);
    }
    std::sort(r.begin(), r.end());
    return r;
  }
};

class PackedCode {
 public:
  static constexpr std::size_t kLanes = 16;

  explicit PackedCode(const IntegerCode& code)
      : size_(code.size()), groups_((static_cast<std::size_t>(code.dimension) + 3) / 4),
        blocks_((size_ + kLanes - 1) / kLanes) {
    const std::size_t padded = groups_ * 4;
    rows_.assign(size_ * padded, 0);
    lanes_.assign(blocks_ * groups_ * kLanes * 4, 0);
    sums_.assign(blocks_ * kLanes, 0);
    for (std::size_t p = 0; p < size_; ++p) {
      const std::int8_t* src = code.point(p);
      std::int32_t s = 0;
      for (int k = 0; k < code.dimension; ++k) {
        rows_[p * padded + static_cast<std::size_t>(k)] = src[k];
        s += src[k];
      }
      sums_[p] = s;
      const std::size_t b = p / kLanes;
      const std::size_t lane = p % kLanes;
      for (std::size_t g = 0; g < groups_; ++g) {
        std::int8_t* dst = lanes_.data() + ((b * groups_ + g) * kLanes + lane) * 4;
        std::memcpy(dst, rows_.data() + p * padded + g * 4, 4);
      }
    }
  }

  std::size_t size() const { return size_; }
  std::size_t groups() const { return groups_; }

  static bool vectorized() { return LATCERT_HAVE_VNNI; }

  /// Tallies dot(x, y) for y in [begin, end), optionally skipping y == x.
  void tally_row(std::size_t x, std::size_t begin, std::size_t end, bool skip_self, DotTally& tally) const {
#if LATCERT_HAVE_VNNI
    if (groups_ <= kMaxVectorGroups) {
      tally_row_vnni(x, begin, end, skip_self, tally);
      return;
    }
#endif
    tally_row_scalar(x, begin, end, skip_self, tally);
  }

  /// Tallies rows xs[i] against y in [lo(x), hi(x)), sweeping y in cache-sized
  /// tiles so each tile is reused by every row of the batch.
  template <class Lo, class Hi, class Sink>
  void tally_rows(std::span<const std::size_t> xs, Lo&& lo, Hi&& hi, bool skip_self, Sink&& tally_for) const {
    if (xs.empty()) return;
    std::size_t ymin = size_;
    std::size_t ymax = 0;
    for (auto x : xs) {
      ymin = std::min<std::size_t>(ymin, lo(x));
      ymax = std::max<std::size_t>(ymax, hi(x));
    }
    for (std::size_t tile = ymin - ymin % kLanes; tile < ymax; tile += kTilePoints) {
      const std::size_t tile_end = tile + kTilePoints;
      for (auto x : xs) {
        const std::size_t b = std::max<std::size_t>(lo(x), tile);
        const std::size_t e = std::min<std::size_t>(hi(x), tile_end);
        if (b < e) tally_row(x, b, e, skip_self, tally_for(x));
      }
    }
  }

  void tally_row_scalar(std::size_t x, std::size_t begin, std::size_t end, bool skip_self, DotTally& tally) const {
    const std::size_t padded = groups_ * 4;
    const std::int8_t* xr = rows_.data() + x * padded;
    for (std::size_t y = begin; y < end; ++y) {
      if (skip_self && y == x) continue;
      const std::int8_t* yr = rows_.data() + y * padded;
      std::int32_t s = 0;
      for (std::size_t k = 0; k < padded; ++k) s += xr[k] * yr[k];
      tally.add(s);
    }
  }

 private:
  static constexpr std::size_t kMaxVectorGroups = 64;
  static constexpr std::size_t kTilePoints = 2048;

#if LATCERT_HAVE_VNNI
  static constexpr std::size_t kMaxProbes = 12;

  struct VnniRow {
    __m512i xg[kMaxVectorGroups];
    std::size_t x;
    std::size_t begin;
    std::size_t end;
    bool skip_self;
  };

  __m512i block_dots(const VnniRow& r, std::size_t b) const {
    const std::int8_t* blk = lanes_.data() + b * groups_ * kLanes * 4;
    __m512i acc = _mm512_setzero_si512();
    for (std::size_t g = 0; g < groups_; ++g) {
      acc = _mm512_dpbusd_epi32(acc, r.xg[g], _mm512_loadu_si512(blk + g * kLanes * 4));
    }
    // dpbusd multiplied (x + 128) by y; remove 128 * sum(y).
    return _mm512_sub_epi32(acc, _mm512_slli_epi32(_mm512_loadu_si512(sums_.data() + b * kLanes), 7));
  }

  static __mmask16 live_mask(const VnniRow& r, std::size_t b) {
    std::uint32_t live = 0xFFFFu;
    const std::size_t base = b * kLanes;
    if (r.begin > base) live &= ~((1u << (r.begin - base)) - 1u);
    if (r.end < base + kLanes) live &= (1u << (r.end - base)) - 1u;
    if (r.skip_self && r.x >= base && r.x < base + kLanes) live &= ~(1u << (r.x - base));
    return static_cast<__mmask16>(live);
  }

  // Counts blocks [b, b1) against NP known values held in registers. Stops at the
  // first block containing an unknown value and returns its index (b1 if none).
  template <std::size_t NP>
  std::size_t count_known(const VnniRow& r, std::size_t b, std::size_t b1, const std::int32_t* values,
                          std::uint64_t* counts) const {
    __m512i probe[NP > 0 ? NP : 1];
    __m512i cnt[NP > 0 ? NP : 1];
    for (std::size_t k = 0; k < NP; ++k) {
      probe[k] = _mm512_set1_epi32(values[k]);
      cnt[k] = _mm512_setzero_si512();
    }
    const __m512i one = _mm512_set1_epi32(1);
    for (; b < b1; ++b) {
      const __m512i dots = block_dots(r, b);
      const __mmask16 lm = live_mask(r, b);
      __mmask16 hit[NP > 0 ? NP : 1];
      __mmask16 covered = 0;
      for (std::size_t k = 0; k < NP; ++k) {
        hit[k] = _mm512_mask_cmpeq_epi32_mask(lm, dots, probe[k]);
        covered = static_cast<__mmask16>(covered | hit[k]);
      }
      if (covered != lm) break;
      for (std::size_t k = 0; k < NP; ++k) cnt[k] = _mm512_mask_add_epi32(cnt[k], hit[k], cnt[k], one);
    }
    for (std::size_t k = 0; k < NP; ++k) {
      counts[k] += static_cast<std::uint32_t>(_mm512_reduce_add_epi32(cnt[k]));
    }
    return b;
  }

  template <std::size_t... I>
  std::size_t dispatch_known(std::size_t np, const VnniRow& r, std::size_t b, std::size_t b1,
                             const std::int32_t* values, std::uint64_t* counts, std::index_sequence<I...>) const {
    std::size_t out = b;
    ((np == I ? (out = count_known<I>(r, b, b1, values, counts), true) : false) || ...);
    return out;
  }

  void tally_row_vnni(std::size_t x, std::size_t begin, std::size_t end, bool skip_self, DotTally& tally) const {
    if (begin >= end) return;
    VnniRow r{{}, x, begin, end, skip_self};
    const std::size_t padded = groups_ * 4;
    for (std::size_t g = 0; g < groups_; ++g) {
      std::uint32_t w;
      std::memcpy(&w, rows_.data() + x * padded + g * 4, 4);
      r.xg[g] = _mm512_set1_epi32(static_cast<int>(w ^ 0x80808080u));
    }

    std::int32_t values[kMaxProbes];
    std::uint64_t counts[kMaxProbes] = {};
    std::size_t np = std::min(tally.values.size(), kMaxProbes);
    std::copy_n(tally.values.begin(), np, values);

    alignas(64) std::int32_t spill[kLanes];
    std::size_t b = begin / kLanes;
    const std::size_t b1 = (end + kLanes - 1) / kLanes;
    while (b < b1) {
      b = dispatch_known(np, r, b, b1, values, counts, std::make_index_sequence<kMaxProbes + 1>{});
      if (b == b1) break;
      // Block b holds a value outside the probe set: count it lane by lane.
      _mm512_store_si512(spill, block_dots(r, b));
      const unsigned lm = live_mask(r, b);
      for (unsigned lane = 0; lane < kLanes; ++lane) {
        if (!((lm >> lane) & 1u)) continue;
        const std::int32_t v = spill[lane];
        const auto* hit = std::find(values, values + np, v);
        if (hit != values + np) {
          ++counts[hit - values];
        } else if (np < kMaxProbes) {
          values[np] = v;
          counts[np] = 1;
          ++np;
        } else {
          tally.add(v);
        }
      }
      ++b;
    }
    for (std::size_t k = 0; k < np; ++k) tally.add(values[k], counts[k]);
  }
#endif

  std::size_t size_;
  std::size_t groups_;
  std::size_t blocks_;
  std::vector<std::int8_t> rows_;
  std::vector<std::int8_t> lanes_;
  std::vector<std::int32_t> sums_;
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs body(row, tally) for every row index across `threads` workers with
/// thread-local tallies; returns the merged tally. Rows are handed out in chunks.
inline DotTally parallel_rows(std::size_t rows, unsigned threads,
                              const std::function<void(std::size_t, DotTally&)>& body,
                              const std::function<void(std::size_t)>& progress = {}) {
  threads = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(rows, 1))));
  constexpr std::size_t kChunk = 64;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::vector<DotTally> partial(threads);
  auto worker = [&](unsigned id) {
    for (;;) {
      const std::size_t start = next.fetch_add(kChunk);
      if (start >= rows) break;
      const std::size_t stop = std::min(rows, start + kChunk);
      for (std::size_t r = start; r < stop; ++r) body(r, partial[id]);
      const std::size_t finished = done.fetch_add(stop - start) + (stop - start);
      if (progress && id == 0) progress(finished);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  DotTally total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace latcert
