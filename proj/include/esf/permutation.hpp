#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace esf {

using point_t = std::uint32_t;

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bijection of {1,...,n}. Stored 0-based: image()[i] is the image of i+1, minus one.
// All text I/O is 1-based.
class Permutation {
 public:
  // Identity of degree n.
  explicit Permutation(std::size_t n) : image_(n) {
    if (n == 0) throw std::invalid_argument("permutation degree must be at least 1");
    std::iota(image_.begin(), image_.end(), point_t{0});
  }

  // From a 0-based image array. Throws ParseError if the array is not a bijection.
  static Permutation from_images(std::vector<point_t> image) {
    validate(image, 0);
    return Permutation(std::move(image), Unchecked{});
  }

  // From a 1-based image array, as in the one-line text format.
  static Permutation from_one_based(const std::vector<std::size_t>& image) {
    std::vector<point_t> zero(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (image[i] == 0) throw ParseError("image 0 is out of range 1.." + std::to_string(image.size()));
      zero[i] = static_cast<point_t>(image[i] - 1);
    }
    validate(zero, 1);
    return Permutation(std::move(zero), Unchecked{});
  }

  // Builds the cycle (c[0] c[1] ... c[m-1]) of degree n from 1-based points.
  static Permutation cycle(std::size_t n, const std::vector<std::size_t>& c) {
    Permutation p(n);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0 || c[i] > n)
        throw ParseError("point " + std::to_string(c[i]) + " is out of range 1.." + std::to_string(n));
      if (seen[c[i] - 1]) throw ParseError("point " + std::to_string(c[i]) + " repeated in cycle");
      seen[c[i] - 1] = true;
      p.image_[c[i] - 1] = static_cast<point_t>(c[(i + 1) % c.size()] - 1);
    }
    return p;
  }

  // (1 2 ... n)
  static Permutation long_cycle(std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p.image_[i] = static_cast<point_t>((i + 1) % n);
    return p;
  }

  std::size_t degree() const { return image_.size(); }
  point_t operator[](std::size_t i) const { return image_[i]; }
  const std::vector<point_t>& image() const { return image_; }

  // 1-based evaluation.
  std::size_t apply(std::size_t x) const { return image_.at(x - 1) + 1; }

  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<point_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<point_t>(i);
    return Permutation(std::move(inv), Unchecked{});
  }

  // Number of cycles, fixed points included.
  std::size_t cycle_count() const {
    std::vector<bool> seen(image_.size(), false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (seen[i]) continue;
      ++count;
      for (std::size_t j = i; !seen[j]; j = image_[j]) seen[j] = true;
    }
    return count;
  }

  // +1 or -1.
  int sign() const { return ((degree() - cycle_count()) % 2 == 0) ? 1 : -1; }

  // Cycles as 1-based point lists, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<std::size_t>> cycles(bool include_fixed = true) const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (seen[i]) continue;
      std::vector<std::size_t> c;
      for (std::size_t j = i; !seen[j]; j = image_[j]) {
        seen[j] = true;
        c.push_back(j + 1);
      }
      if (include_fixed || c.size() > 1) out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<std::size_t> cycle_lengths() const {
    std::vector<std::size_t> out;
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = image_[j]) {
        seen[j] = true;
        ++len;
      }
      out.push_back(len);
    }
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.image_ <=> b.image_; }

 private:
  struct Unchecked {};
  Permutation(std::vector<point_t> image, Unchecked) : image_(std::move(image)) {}

  static void validate(const std::vector<point_t>& image, int offset) {
    if (image.empty()) throw ParseError("permutation degree must be at least 1");
    std::vector<bool> seen(image.size(), false);
    for (point_t v : image) {
      if (v >= image.size())
        throw ParseError("image " + std::to_string(v + offset) + " is out of range for degree " +
                         std::to_string(image.size()));
      if (seen[v]) throw ParseError("not a bijection: image " + std::to_string(v + offset) + " is duplicated");
      seen[v] = true;
    }
  }

  std::vector<point_t> image_;

  friend Permutation compose(const Permutation& p, const Permutation& q);
};

// (p o q)(x) = p(q(x)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw DegreeMismatch("cannot compose permutations of degree " + std::to_string(p.degree()) + " and " +
                         std::to_string(q.degree()));
  std::vector<point_t> r(p.degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = p.image_[q.image_[i]];
  return Permutation(std::move(r), Permutation::Unchecked{});
}

// ---- text formats ---------------------------------------------------------

// One-line format: "3 1 2" lists the images of 1..n.
inline std::string format_one_line(const Permutation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p[i] + 1);
  }
  return out;
}

inline Permutation parse_one_line(std::string_view text) {
  std::vector<std::size_t> image;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("not a point: '" + tok + "'");
    }
    if (used != tok.size() || tok[0] == '-') throw ParseError("not a point: '" + tok + "'");
    image.push_back(v);
  }
  if (image.empty()) throw ParseError("empty permutation");
  return Permutation::from_one_based(image);
}

// Cycle format with fixed points omitted; the identity is "()".
inline std::string format_cycles(const Permutation& p) {
  std::string out;
  for (const auto& c : p.cycles(false)) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// Parses "(1 3 2)(4 5)" as a permutation of degree n. Cycles must be disjoint.
inline Permutation parse_cycles(std::string_view text, std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{1});
  std::vector<bool> used(n + 1, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<std::size_t> c;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t v = 0;
      std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
      if (i == start) throw ParseError("unexpected character '" + std::string(1, text[i]) + "' in cycle");
      if (v == 0 || v > n) throw ParseError("point " + std::to_string(v) + " is out of range 1.." + std::to_string(n));
      if (used[v]) throw ParseError("not a bijection: point " + std::to_string(v) + " is duplicated");
      used[v] = true;
      c.push_back(v);
    }
    for (std::size_t j = 0; j < c.size(); ++j) image[c[j] - 1] = c[(j + 1) % c.size()];
    skip_ws();
  }
  return Permutation::from_one_based(image);
}

}  // namespace esf
