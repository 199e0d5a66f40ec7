#pragma once

// Binary words (vertices of the infinite rooted binary tree), exact dyadic
// intervals, canonical unions of standard dyadic intervals, and eventually
// periodic points of the Cantor space.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pythag {

/// A finite word over {0,1}. The empty word is the root of the tree.
class BinaryWord {
public:
  BinaryWord() = default;
  BinaryWord(std::initializer_list<int> bits);

  /// Parses "0110"; "^" and "" give the empty word.
  static BinaryWord parse(std::string_view text);
  /// The word `bit` repeated `count` times.
  static BinaryWord repeat(int bit, std::size_t count);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  int back() const { return bits_.back(); }

  void push_back(int bit);
  void pop_back() { bits_.pop_back(); }

  BinaryWord child(int bit) const;
  BinaryWord parent() const;
  BinaryWord sibling() const;
  /// First `n` letters.
  BinaryWord prefix(std::size_t n) const;
  /// Letters from position `n` on.
  BinaryWord suffix(std::size_t n) const;

  /// True iff `*this` is a (not necessarily proper) prefix of `other`.
  bool is_prefix_of(const BinaryWord& other) const noexcept;

  /// "^" for the empty word.
  std::string to_string() const;

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  // Lexicographic; a proper prefix sorts before its extensions.
  auto operator<=>(const BinaryWord&) const = default;
  bool operator==(const BinaryWord&) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

BinaryWord concat(const BinaryWord& w, const BinaryWord& v);

/// True iff neither word is a prefix of the other.
bool disjoint(const BinaryWord& w, const BinaryWord& v);

/// Exact dyadic rational numerator / 2^exponent, kept normalized
/// (odd numerator, or exponent zero).
struct Dyadic {
  std::int64_t numerator = 0;
  int exponent = 0;

  static Dyadic make(std::int64_t numerator, int exponent);

  Dyadic operator+(const Dyadic& other) const;
  Dyadic operator-(const Dyadic& other) const;
  double to_double() const;
  std::string to_string() const;

  bool operator==(const Dyadic&) const = default;
};

/// Closed interval [lo, hi] of the standard dyadic interval I_w.
std::pair<Dyadic, Dyadic> word_to_interval(const BinaryWord& w);

/// 2^-|w|.
Dyadic word_measure(const BinaryWord& w);

/// Pairwise-disjoint words with sibling pairs merged; equality of unions is
/// structural equality of this form.
class IntervalUnion {
public:
  IntervalUnion() = default;

  static IntervalUnion full();
  static IntervalUnion from_words(const std::vector<BinaryWord>& words);

  const std::vector<BinaryWord>& words() const noexcept { return words_; }
  bool empty() const noexcept { return words_.empty(); }
  bool is_full() const;

  /// True iff I_w lies inside the union.
  bool covers(const BinaryWord& w) const;
  /// True iff I_w meets the union.
  bool intersects(const BinaryWord& w) const;
  bool contains(const IntervalUnion& other) const;

  Dyadic measure() const;

  bool operator==(const IntervalUnion&) const = default;

  friend IntervalUnion union_insert(IntervalUnion u, const BinaryWord& w);

private:
  std::vector<BinaryWord> words_;  // sorted
};

IntervalUnion union_insert(IntervalUnion u, const BinaryWord& w);
IntervalUnion union_complement(const IntervalUnion& u);
IntervalUnion union_merge(const IntervalUnion& u, const IntervalUnion& v);

/// True iff the words form a complete prefix code (the leaves of some tree).
bool is_sdp(const std::vector<BinaryWord>& words);

/// The eventually periodic sequence preperiod·period·period·...
class CantorPoint {
public:
  /// Throws ContractError on an empty period.
  CantorPoint(BinaryWord preperiod, BinaryWord period);

  /// Parses "pre(period)", e.g. "1(0)" or "(10)".
  static CantorPoint parse(std::string_view text);

  const BinaryWord& preperiod() const noexcept { return preperiod_; }
  const BinaryWord& period() const noexcept { return period_; }

  int bit(std::size_t i) const;
  BinaryWord first_bits(std::size_t n) const;

  /// The point with its first `n` letters replaced by `replacement`.
  CantorPoint replace_prefix(std::size_t n, const BinaryWord& replacement) const;

  std::string to_string() const;

  bool operator==(const CantorPoint&) const = default;

private:
  void canonicalize();

  BinaryWord preperiod_;
  BinaryWord period_;
};

/// The point w·p.
CantorPoint prepend(const BinaryWord& w, const CantorPoint& p);

bool point_in_interval(const CantorPoint& p, const BinaryWord& w);

}  // namespace pythag
