#include "pythag/words.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "pythag/errors.hpp"

namespace pythag {

BinaryWord::BinaryWord(std::initializer_list<int> bits) {
  for (int b : bits) push_back(b);
}

BinaryWord BinaryWord::parse(std::string_view text) {
  BinaryWord w;
  if (text == "^") return w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '0' && c != '1') throw ParseError("expected binary digit", i);
    w.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

BinaryWord BinaryWord::repeat(int bit, std::size_t count) {
  BinaryWord w;
  for (std::size_t i = 0; i < count; ++i) w.push_back(bit);
  return w;
}

void BinaryWord::push_back(int bit) {
  if (bit != 0 && bit != 1) throw ContractError("binary word letters must be 0 or 1");
  bits_.push_back(static_cast<std::uint8_t>(bit));
}

BinaryWord BinaryWord::child(int bit) const {
  BinaryWord w = *this;
  w.push_back(bit);
  return w;
}

BinaryWord BinaryWord::parent() const {
  if (empty()) throw ContractError("the root has no parent");
  BinaryWord w = *this;
  w.pop_back();
  return w;
}

BinaryWord BinaryWord::sibling() const {
  if (empty()) throw ContractError("the root has no sibling");
  BinaryWord w = *this;
  w.bits_.back() ^= 1u;
  return w;
}

BinaryWord BinaryWord::prefix(std::size_t n) const {
  BinaryWord w;
  w.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
  return w;
}

BinaryWord BinaryWord::suffix(std::size_t n) const {
  BinaryWord w;
  if (n < size()) w.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(n), bits_.end());
  return w;
}

bool BinaryWord::is_prefix_of(const BinaryWord& other) const noexcept {
  return size() <= other.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::string BinaryWord::to_string() const {
  if (empty()) return "^";
  std::string s;
  s.reserve(size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

BinaryWord concat(const BinaryWord& w, const BinaryWord& v) {
  BinaryWord r = w;
  for (auto b : v.bits()) r.push_back(b);
  return r;
}

bool disjoint(const BinaryWord& w, const BinaryWord& v) {
  return !w.is_prefix_of(v) && !v.is_prefix_of(w);
}

// ---------------------------------------------------------------------------
// Dyadic

namespace {

constexpr int kMaxExponent = 62;

void check_exponent(int e) {
  if (e > kMaxExponent) throw std::overflow_error("dyadic exponent exceeds 62 bits");
}

}  // namespace

Dyadic Dyadic::make(std::int64_t numerator, int exponent) {
  check_exponent(exponent);
  while (exponent > 0 && numerator % 2 == 0) {
    numerator /= 2;
    --exponent;
  }
  if (numerator == 0) exponent = 0;
  return {numerator, exponent};
}

Dyadic Dyadic::operator+(const Dyadic& other) const {
  int e = std::max(exponent, other.exponent);
  std::int64_t a = numerator << (e - exponent);
  std::int64_t b = other.numerator << (e - other.exponent);
  return make(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& other) const {
  return *this + Dyadic{-other.numerator, other.exponent};
}

double Dyadic::to_double() const {
  return static_cast<double>(numerator) / static_cast<double>(std::int64_t{1} << exponent);
}

std::string Dyadic::to_string() const {
  if (exponent == 0) return std::to_string(numerator);
  return std::to_string(numerator) + "/" + std::to_string(std::int64_t{1} << exponent);
}

std::pair<Dyadic, Dyadic> word_to_interval(const BinaryWord& w) {
  int n = static_cast<int>(w.size());
  check_exponent(n);
  std::int64_t num = 0;
  for (std::size_t i = 0; i < w.size(); ++i) num = (num << 1) | w[i];
  return {Dyadic::make(num, n), Dyadic::make(num + 1, n)};
}

Dyadic word_measure(const BinaryWord& w) {
  return Dyadic::make(1, static_cast<int>(w.size()));
}

// ---------------------------------------------------------------------------
// IntervalUnion

IntervalUnion IntervalUnion::full() {
  IntervalUnion u;
  u.words_.emplace_back();
  return u;
}

IntervalUnion IntervalUnion::from_words(const std::vector<BinaryWord>& words) {
  IntervalUnion u;
  for (const auto& w : words) u = union_insert(std::move(u), w);
  return u;
}

bool IntervalUnion::is_full() const {
  return words_.size() == 1 && words_.front().empty();
}

bool IntervalUnion::covers(const BinaryWord& w) const {
  // The covering word, if any, is the greatest element not exceeding w.
  auto it = std::upper_bound(words_.begin(), words_.end(), w);
  return it != words_.begin() && std::prev(it)->is_prefix_of(w);
}

bool IntervalUnion::intersects(const BinaryWord& w) const {
  if (covers(w)) return true;
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  return it != words_.end() && w.is_prefix_of(*it);
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
  return std::all_of(other.words_.begin(), other.words_.end(),
                     [this](const BinaryWord& w) { return covers(w); });
}

Dyadic IntervalUnion::measure() const {
  Dyadic total;
  for (const auto& w : words_) total = total + word_measure(w);
  return total;
}

IntervalUnion union_insert(IntervalUnion u, const BinaryWord& w) {
  if (u.covers(w)) return u;
  auto& ws = u.words_;
  // Drop everything inside I_w.
  auto lo = std::lower_bound(ws.begin(), ws.end(), w);
  auto hi = lo;
  while (hi != ws.end() && w.is_prefix_of(*hi)) ++hi;
  ws.erase(lo, hi);

  BinaryWord current = w;
  while (!current.empty()) {
    auto sib = std::lower_bound(ws.begin(), ws.end(), current.sibling());
    if (sib == ws.end() || *sib != current.sibling()) break;
    ws.erase(sib);
    current = current.parent();
  }
  ws.insert(std::lower_bound(ws.begin(), ws.end(), current), current);
  return u;
}

namespace {

void complement_into(const IntervalUnion& u, const BinaryWord& prefix, std::vector<BinaryWord>& out) {
  if (u.covers(prefix)) return;
  if (!u.intersects(prefix)) {
    out.push_back(prefix);
    return;
  }
  complement_into(u, prefix.child(0), out);
  complement_into(u, prefix.child(1), out);
}

}  // namespace

IntervalUnion union_complement(const IntervalUnion& u) {
  std::vector<BinaryWord> out;
  complement_into(u, BinaryWord{}, out);
  return IntervalUnion::from_words(out);
}

IntervalUnion union_merge(const IntervalUnion& u, const IntervalUnion& v) {
  IntervalUnion r = u;
  for (const auto& w : v.words()) r = union_insert(std::move(r), w);
  return r;
}

bool is_sdp(const std::vector<BinaryWord>& words) {
  // A complete prefix code collapses to the root under sibling merging, and
  // no insertion may be absorbed or absorb anything.
  IntervalUnion u;
  for (const auto& w : words) {
    if (u.intersects(w)) return false;
    u = union_insert(std::move(u), w);
  }
  return u.is_full();
}

// ---------------------------------------------------------------------------
// CantorPoint

CantorPoint::CantorPoint(BinaryWord preperiod, BinaryWord period)
  : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw ContractError("cantor point period must be nonempty");
  canonicalize();
}

void CantorPoint::canonicalize() {
  const std::size_t n = period_.size();
  for (std::size_t k = 1; k < n; ++k) {
    if (n % k != 0) continue;
    bool periodic = true;
    for (std::size_t i = k; i < n && periodic; ++i) periodic = period_[i] == period_[i - k];
    if (periodic) {
      period_ = period_.prefix(k);
      break;
    }
  }
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    BinaryWord rotated;
    rotated.push_back(period_.back());
    for (std::size_t i = 0; i + 1 < period_.size(); ++i) rotated.push_back(period_[i]);
    period_ = rotated;
    preperiod_.pop_back();
  }
}

CantorPoint CantorPoint::parse(std::string_view text) {
  auto open = text.find('(');
  if (open == std::string_view::npos) throw ParseError("expected '(' in cantor point", text.size());
  if (text.empty() || text.back() != ')') throw ParseError("expected ')' closing cantor point", text.size());
  auto pre = text.substr(0, open);
  auto per = text.substr(open + 1, text.size() - open - 2);
  if (per.empty()) throw ParseError("empty period", open + 1);
  BinaryWord pre_word;
  BinaryWord per_word;
  try {
    pre_word = pre.empty() ? BinaryWord{} : BinaryWord::parse(pre);
  } catch (const ParseError& e) {
    throw ParseError("expected binary digit", e.offset());
  }
  try {
    per_word = BinaryWord::parse(per);
  } catch (const ParseError& e) {
    throw ParseError("expected binary digit", open + 1 + e.offset());
  }
  return CantorPoint(std::move(pre_word), std::move(per_word));
}

int CantorPoint::bit(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

BinaryWord CantorPoint::first_bits(std::size_t n) const {
  BinaryWord w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(bit(i));
  return w;
}

CantorPoint CantorPoint::replace_prefix(std::size_t n, const BinaryWord& replacement) const {
  if (n <= preperiod_.size()) {
    return CantorPoint(concat(replacement, preperiod_.suffix(n)), period_);
  }
  std::size_t shift = (n - preperiod_.size()) % period_.size();
  BinaryWord rotated = concat(period_.suffix(shift), period_.prefix(shift));
  return CantorPoint(replacement, rotated);
}

std::string CantorPoint::to_string() const {
  std::string pre = preperiod_.empty() ? std::string{} : preperiod_.to_string();
  return pre + "(" + period_.to_string() + ")";
}

CantorPoint prepend(const BinaryWord& w, const CantorPoint& p) {
  return p.replace_prefix(0, w);
}

bool point_in_interval(const CantorPoint& p, const BinaryWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (p.bit(i) != w[i]) return false;
  return true;
}

}  // namespace pythag
