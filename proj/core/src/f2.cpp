#include "khtangle/f2.hpp"

#include <bit>

namespace kht {

namespace {

using Row = std::vector<std::uint64_t>;

bool test_bit(const Row& r, std::size_t c) { return (r[c / 64] >> (c % 64)) & 1U; }

void xor_into(Row& dst, const Row& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

std::optional<std::size_t> lowest_bit(const Row& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(r[i]));
  return std::nullopt;
}

}  // namespace

std::size_t F2Matrix::rank() const {
  // pivot column -> reduced row
  std::vector<std::optional<Row>> pivots(cols_);
  std::size_t r = 0;
  for (auto row : rows_) {
    while (auto c = lowest_bit(row)) {
      if (!pivots[*c]) {
        pivots[*c] = std::move(row);
        ++r;
        break;
      }
      xor_into(row, *pivots[*c]);
    }
  }
  return r;
}

std::optional<std::vector<std::size_t>> F2Matrix::solve(
    const std::vector<std::size_t>& target) const {
  const std::size_t n = rows_.size();
  const std::size_t tag_words = (n + 63) / 64;
  struct Pivot {
    Row row;
    Row tag;  // which original rows were summed
  };
  std::vector<std::optional<Pivot>> pivots(cols_);
  for (std::size_t i = 0; i < n; ++i) {
    Pivot p{rows_[i], Row(tag_words, 0)};
    p.tag[i / 64] ^= std::uint64_t{1} << (i % 64);
    while (auto c = lowest_bit(p.row)) {
      if (!pivots[*c]) {
        pivots[*c] = std::move(p);
        break;
      }
      xor_into(p.row, pivots[*c]->row);
      xor_into(p.tag, pivots[*c]->tag);
    }
  }
  Row t(words_, 0);
  for (auto c : target) t[c / 64] ^= std::uint64_t{1} << (c % 64);
  Row tag(tag_words, 0);
  while (auto c = lowest_bit(t)) {
    if (!pivots[*c]) return std::nullopt;
    xor_into(t, pivots[*c]->row);
    xor_into(tag, pivots[*c]->tag);
  }
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < n; ++i)
    if (test_bit(tag, i)) used.push_back(i);
  return used;
}

}  // namespace kht
