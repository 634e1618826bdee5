// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CURVSUB_SUBSET_H_
#define CURVSUB_SUBSET_H_

#include <bitset>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curvsub {

// Largest ground set a Subset can represent.
inline constexpr int kMaxElements = 512;

// Default cap for anything that enumerates all 2^n subsets.
inline constexpr int kDefaultTableLimit = 12;

// Ground set {0, ..., n-1} with optional element labels.
class GroundSet {
 public:
  explicit GroundSet(int n, std::vector<std::string> labels = {});

  int size() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string Label(int j) const;

 private:
  int n_;
  std::vector<std::string> labels_;
};

// A subset of a ground set of n elements, stored as a fixed-width bit mask.
// Bits at positions >= n are never set.
class Subset {
 public:
  Subset() = default;
  explicit Subset(int n);

  static Subset Full(int n);
  static Subset FromMask(int n, uint64_t mask);
  static Subset FromElements(int n, std::span<const int> elements);
  static Subset FromElements(int n, std::initializer_list<int> elements);

  int n() const { return n_; }
  int size() const { return static_cast<int>(bits_.count()); }
  bool empty() const { return bits_.none(); }
  bool contains(int j) const { return bits_.test(j); }

  void insert(int j);
  void erase(int j);
  Subset With(int j) const;
  Subset Without(int j) const;

  Subset Complement() const;
  Subset operator|(const Subset& other) const;
  Subset operator&(const Subset& other) const;
  // Set difference.
  Subset operator-(const Subset& other) const;
  bool operator==(const Subset& other) const = default;

  bool IsSubsetOf(const Subset& other) const;
  std::vector<int> Elements() const;

  // Requires n <= 64.
  uint64_t ToMask() const;
  // Lowercase hex of the mask, most significant nibble first, "0x" prefixed.
  std::string ToHex() const;
  // "{0,2,5}".
  std::string ToString() const;

  template <typename F>
  void ForEach(F&& f) const {
    for (int j = 0; j < n_; ++j) {
      if (bits_.test(j)) f(j);
    }
  }

  const std::bitset<kMaxElements>& bits() const { return bits_; }

 private:
  std::bitset<kMaxElements> bits_;
  int n_ = 0;
};

// Parses the output of ToHex() (with or without the 0x prefix).
std::optional<Subset> SubsetFromHex(int n, const std::string& hex);

// Calls f(mask) for every mask in [0, 2^n) in increasing order; n <= 30.
template <typename F>
void ForEachMask(int n, F&& f) {
  const uint64_t end = uint64_t{1} << n;
  for (uint64_t mask = 0; mask < end; ++mask) f(mask);
}

// Throws kScale when n exceeds limit (used by exhaustive routines).
void RequireEnumerable(int n, int limit, const char* what);

}  // namespace curvsub

template <>
struct std::hash<curvsub::Subset> {
  size_t operator()(const curvsub::Subset& s) const noexcept {
    return std::hash<std::bitset<curvsub::kMaxElements>>()(s.bits()) ^
           static_cast<size_t>(s.n());
  }
};

#endif  // CURVSUB_SUBSET_H_
