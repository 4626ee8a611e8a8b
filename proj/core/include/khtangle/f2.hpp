#pragma once

// Exact linear algebra over the two-element field.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <map>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

namespace kht {

/// A finite F2-linear combination of basis keys, stored as a sorted set of
/// keys. Absent means coefficient 0; the empty combination is zero.
template <class Key>
class LinComb {
 public:
  using value_type = Key;
  using const_iterator = typename std::vector<Key>::const_iterator;

  LinComb() = default;
  LinComb(std::initializer_list<Key> keys) {
    for (const auto& k : keys) toggle(k);
  }
  static LinComb single(const Key& k) {
    LinComb r;
    r.terms_.push_back(k);
    return r;
  }

  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const std::vector<Key>& terms() const { return terms_; }

  bool contains(const Key& k) const {
    return std::binary_search(terms_.begin(), terms_.end(), k);
  }

  // Adds a single basis key (flips its coefficient).
  void toggle(const Key& k) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k);
    if (it != terms_.end() && *it == k)
      terms_.erase(it);
    else
      terms_.insert(it, k);
  }

  LinComb& operator+=(const LinComb& other) {
    if (other.terms_.empty()) return *this;
    std::vector<Key> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(),
                                  other.terms_.end(), std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }

  friend bool operator==(const LinComb& a, const LinComb& b) = default;
  friend auto operator<=>(const LinComb& a, const LinComb& b) = default;

  template <class F>
  auto map(F&& f) const {
    using Out = std::invoke_result_t<F, const Key&>;
    Out acc{};
    for (const auto& k : terms_) acc += f(k);
    return acc;
  }

 private:
  std::vector<Key> terms_;
};

/// Dense F2 row-reduction over a fixed column count.
class F2Matrix {
 public:
  explicit F2Matrix(std::size_t cols) : cols_(cols), words_((cols + 63) / 64) {}

  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_.size(); }

  void add_row(const std::vector<std::size_t>& ones) {
    std::vector<std::uint64_t> row(words_, 0);
    for (auto c : ones) row[c / 64] ^= (std::uint64_t{1} << (c % 64));
    rows_.push_back(std::move(row));
  }

  std::size_t rank() const;

  /// Finds a set of row indices whose sum equals `target`, if one exists.
  std::optional<std::vector<std::size_t>> solve(const std::vector<std::size_t>& target) const;

 private:
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

/// Rows given as combinations over a shared key universe. Columns are the
/// keys actually present.
template <class Key>
class KeyedRows {
 public:
  void add(const LinComb<Key>& row) { rows_.push_back(row); }
  std::size_t rows() const { return rows_.size(); }

  std::size_t rank() const { return build({}).first.rank(); }

  std::optional<std::vector<std::size_t>> solve(const LinComb<Key>& target) const {
    auto [m, columns] = build(target);
    std::vector<std::size_t> t;
    for (const auto& k : target) t.push_back(columns.at(k));
    return m.solve(t);
  }

 private:
  std::pair<F2Matrix, std::map<Key, std::size_t>> build(const LinComb<Key>& extra) const {
    std::map<Key, std::size_t> columns;
    for (const auto& r : rows_)
      for (const auto& k : r) columns.emplace(k, 0);
    for (const auto& k : extra) columns.emplace(k, 0);
    std::size_t i = 0;
    for (auto& [k, c] : columns) c = i++;
    F2Matrix m(columns.size());
    for (const auto& r : rows_) {
      std::vector<std::size_t> ones;
      for (const auto& k : r) ones.push_back(columns.at(k));
      m.add_row(ones);
    }
    return {std::move(m), std::move(columns)};
  }

  std::vector<LinComb<Key>> rows_;
};

}  // namespace kht
