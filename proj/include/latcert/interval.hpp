#pragma once

#include "latcert/rational.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace latcert {

struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Rational& t) const {
    if (t < lo || t > hi) return false;
    if (t == lo && !lo_closed) return false;
    if (t == hi && !hi_closed) return false;
    return true;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint intervals, kept sorted and merged.
class IntervalRegion {
 public:
  IntervalRegion() = default;
  explicit IntervalRegion(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

  static IntervalRegion closed(Rational lo, Rational hi) {
    return IntervalRegion({Interval{std::move(lo), std::move(hi), true, true}});
  }
  static IntervalRegion open(Rational lo, Rational hi) {
    return IntervalRegion({Interval{std::move(lo), std::move(hi), false, false}});
  }

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  bool contains(const Rational& t) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(t); });
  }

  IntervalRegion united(const IntervalRegion& o) const {
    auto all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return IntervalRegion(std::move(all));
  }

  IntervalRegion minus(const IntervalRegion& removed) const {
    std::vector<Interval> cur = parts_;
    for (const auto& b : removed.parts_) {
      if (b.empty()) continue;
      std::vector<Interval> next;
      for (const auto& a : cur) {
        // a ∩ (-inf, b.lo) and a ∩ (b.hi, +inf), with closedness flipped at the cut.
        Interval left = a;
        clip_above(left, b.lo, !b.lo_closed);
        if (!left.empty()) next.push_back(left);
        Interval right = a;
        clip_below(right, b.hi, !b.hi_closed);
        if (!right.empty()) next.push_back(right);
      }
      cur = std::move(next);
    }
    return IntervalRegion(std::move(cur));
  }

  friend bool operator==(const IntervalRegion&, const IntervalRegion&) = default;

  /// "(0,1/4)U[1/2,1]"; the empty region prints as "{}".
  std::string str() const {
    if (parts_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const auto& p = parts_[i];
      if (i) out += "U";
      out += p.lo_closed ? "[" : "(";
      out += to_string(p.lo) + "," + to_string(p.hi);
      out += p.hi_closed ? "]" : ")";
    }
    return out;
  }

  /// Accepts the str() syntax; "U", "u" or "∪" separate intervals, "{}", "empty" or "" give the empty set.
  static IntervalRegion parse(std::string_view text) {
    std::string s;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (text.substr(i, 3) == "\xE2\x88\xAA") {  // U+222A
        s += 'U';
        i += 2;
        continue;
      }
      s += (c == 'u') ? 'U' : c;
    }
    if (s.empty() || s == "{}" || s == "empty" || s == "EMPTY" || s == "\xE2\x88\x85") return {};

    std::vector<Interval> parts;
    std::size_t pos = 0;
    while (pos < s.size()) {
      const char open = s[pos];
      if (open != '(' && open != '[') throw ParseError("interval must start with '(' or '[': " + s);
      const auto close = s.find_first_of(")]", pos);
      if (close == std::string::npos) throw ParseError("unterminated interval: " + s);
      const auto body = std::string_view(s).substr(pos + 1, close - pos - 1);
      const auto comma = body.find(',');
      if (comma == std::string_view::npos) throw ParseError("interval needs two endpoints: " + s);
      Interval iv{parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)), open == '[',
                  s[close] == ']'};
      if (iv.lo > iv.hi) throw ParseError("interval endpoints out of order: " + s);
      parts.push_back(iv);
      pos = close + 1;
      if (pos < s.size()) {
        if (s[pos] != 'U') throw ParseError("expected 'U' between intervals: " + s);
        ++pos;
      }
    }
    return IntervalRegion(std::move(parts));
  }

 private:
  static void clip_above(Interval& a, const Rational& v, bool closed) {
    if (v < a.hi) {
      a.hi = v;
      a.hi_closed = closed;
    } else if (v == a.hi) {
      a.hi_closed = a.hi_closed && closed;
    }
  }
  static void clip_below(Interval& a, const Rational& v, bool closed) {
    if (v > a.lo) {
      a.lo = v;
      a.lo_closed = closed;
    } else if (v == a.lo) {
      a.lo_closed = a.lo_closed && closed;
    }
  }

  void normalize() {
    std::erase_if(parts_, [](const Interval& i) { return i.empty(); });
    std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> merged;
    for (const auto& p : parts_) {
      if (!merged.empty()) {
        auto& m = merged.back();
        const bool touches = p.lo < m.hi || (p.lo == m.hi && (p.lo_closed || m.hi_closed));
        if (touches) {
          if (p.hi > m.hi) {
            m.hi = p.hi;
            m.hi_closed = p.hi_closed;
          } else if (p.hi == m.hi) {
            m.hi_closed = m.hi_closed || p.hi_closed;
          }
          continue;
        }
      }
      merged.push_back(p);
    }
    parts_ = std::move(merged);
  }

  std::vector<Interval> parts_;
};

}  // namespace latcert
