#pragma once

// Shellsort increment sequences h_1 > h_2 > ... > h_p = 1.

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shellab {

enum class Family { shell, pratt, chazelle, geometric, target, custom };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::shell: return "shell";
    case Family::pratt: return "pratt";
    case Family::chazelle: return "chazelle";
    case Family::geometric: return "geometric";
    case Family::target: return "target";
    case Family::custom: return "custom";
  }
  return "?";
}

class IncrementSequence {
 public:
  /// Throws unless increments are strictly decreasing, positive, and end in 1.
  IncrementSequence(std::vector<std::size_t> increments, Family family = Family::custom,
                    double parameter = 0.0)
      : h_(std::move(increments)), family_(family), parameter_(parameter) {
    if (h_.empty()) throw std::invalid_argument("increment sequence: empty");
    if (h_.back() != 1) throw std::invalid_argument("increment sequence: last increment must be 1");
    for (std::size_t k = 1; k < h_.size(); ++k)
      if (h_[k] >= h_[k - 1])
        throw std::invalid_argument("increment sequence: must be strictly decreasing");
  }

  std::size_t passes() const noexcept { return h_.size(); }
  std::size_t operator[](std::size_t k) const noexcept { return h_[k]; }
  const std::vector<std::size_t>& increments() const noexcept { return h_; }
  Family family() const noexcept { return family_; }
  /// a for chazelle, ratio for geometric; 0 otherwise.
  double parameter() const noexcept { return parameter_; }

  /// "shell", "chazelle(3)", "geometric(2.5)", ...
  std::string label() const {
    std::ostringstream os;
    os << family_name(family_);
    if (family_ == Family::chazelle) os << '(' << static_cast<long long>(parameter_) << ')';
    if (family_ == Family::geometric) os << '(' << parameter_ << ')';
    return os.str();
  }

  /// Comma-separated, descending: "8,4,2,1".
  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < h_.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(h_[k]);
    }
    return s;
  }

  static IncrementSequence parse(const std::string& text) {
    std::vector<std::size_t> h;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("increment sequence: bad token '" + tok + "'");
      }
      if (used != tok.size() || v == 0)
        throw std::invalid_argument("increment sequence: bad token '" + tok + "'");
      h.push_back(static_cast<std::size_t>(v));
    }
    return IncrementSequence(std::move(h));
  }

  friend bool operator==(const IncrementSequence& a, const IncrementSequence& b) {
    return a.h_ == b.h_;
  }

 private:
  std::vector<std::size_t> h_;
  Family family_;
  double parameter_;
};

/// floor(n/2), floor(n/4), ..., 1. For n < 2 the single pass (1).
inline IncrementSequence gen_shell_original(std::size_t n) {
  std::vector<std::size_t> h;
  for (std::size_t g = n / 2; g >= 1; g /= 2) h.push_back(g);
  if (h.empty()) h.push_back(1);
  return IncrementSequence(std::move(h), Family::shell);
}

namespace detail {

/// All a^i (a+1)^j below `limit`, descending, always ending in 1.
inline std::vector<std::size_t> smooth_below(std::size_t a, std::size_t limit) {
  std::vector<std::size_t> out;
  for (std::size_t x = 1; x < limit; x *= a) {
    for (std::size_t y = x; y < limit; y *= (a + 1)) out.push_back(y);
  }
  if (out.empty()) out.push_back(1);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace detail

/// Every 2^i 3^j < floor(n/2), descending.
inline IncrementSequence gen_pratt(std::size_t n) {
  return IncrementSequence(detail::smooth_below(2, n / 2), Family::pratt);
}

/// Every a^i (a+1)^j < floor(n/2), descending; 1 is always included.
inline IncrementSequence gen_chazelle(std::size_t n, std::size_t a) {
  if (a < 2) throw std::invalid_argument("gen_chazelle: a must be at least 2");
  return IncrementSequence(detail::smooth_below(a, n / 2), Family::chazelle,
                           static_cast<double>(a));
}

/// h_p = 1, h_{k-1} = ceil(h_k * ratio), stopping before reaching n.
inline IncrementSequence gen_geometric(std::size_t n, double ratio) {
  if (!(ratio > 1.0)) throw std::invalid_argument("gen_geometric: ratio must exceed 1");
  std::vector<std::size_t> h{1};
  for (;;) {
    const double next = std::ceil(static_cast<double>(h.back()) * ratio);
    if (next >= static_cast<double>(n)) break;
    h.push_back(static_cast<std::size_t>(next));
  }
  std::reverse(h.begin(), h.end());
  return IncrementSequence(std::move(h), Family::geometric, ratio);
}

/// Exactly p increments, h_k = round(n^((p-k)/p)), bumped where rounding
/// would collide. Requires 1 <= p < n.
inline IncrementSequence target_pass_count(std::size_t n, std::size_t p) {
  if (p < 1 || p >= n) throw std::invalid_argument("target_pass_count: need 1 <= p < n");
  std::vector<std::size_t> ascending{1};
  const double logn = std::log(static_cast<double>(n));
  for (std::size_t j = 1; j < p; ++j) {
    auto h = static_cast<std::size_t>(
        std::llround(std::exp(logn * static_cast<double>(j) / static_cast<double>(p))));
    ascending.push_back(std::max(h, ascending.back() + 1));
  }
  if (ascending.back() >= n) throw std::logic_error("target_pass_count: increment reached n");
  return IncrementSequence(std::vector<std::size_t>(ascending.rbegin(), ascending.rend()),
                           Family::target);
}

}  // namespace shellab
