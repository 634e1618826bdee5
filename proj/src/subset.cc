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

#include "curvsub/subset.h"

#include <algorithm>
#include <set>
#include <string>

#include "curvsub/errors.h"

namespace curvsub {

GroundSet::GroundSet(int n, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  if (n < 1 || n > kMaxElements) {
    throw Error(ErrorCode::kInvalidArgument,
                "ground set size must be in [1, " +
                    std::to_string(kMaxElements) + "], got " +
                    std::to_string(n));
  }
  if (!labels_.empty()) {
    if (static_cast<int>(labels_.size()) != n_) {
      throw Error(ErrorCode::kInvalidArgument, "label count differs from n");
    }
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (static_cast<int>(seen.size()) != n_) {
      throw Error(ErrorCode::kInvalidArgument, "labels must be unique");
    }
  }
}

std::string GroundSet::Label(int j) const {
  return labels_.empty() ? std::to_string(j) : labels_.at(j);
}

Subset::Subset(int n) : n_(n) {
  if (n < 0 || n > kMaxElements) {
    throw Error(ErrorCode::kInvalidArgument,
                "subset dimension out of range: " + std::to_string(n));
  }
}

Subset Subset::Full(int n) {
  Subset s(n);
  for (int j = 0; j < n; ++j) s.bits_.set(j);
  return s;
}

Subset Subset::FromMask(int n, uint64_t mask) {
  Subset s(n);
  if (n < 64 && (mask >> n) != 0) {
    throw Error(ErrorCode::kContractViolation,
                "mask has bits beyond n=" + std::to_string(n));
  }
  s.bits_ = std::bitset<kMaxElements>(mask);
  return s;
}

Subset Subset::FromElements(int n, std::span<const int> elements) {
  Subset s(n);
  for (int j : elements) s.insert(j);
  return s;
}

Subset Subset::FromElements(int n, std::initializer_list<int> elements) {
  return FromElements(n, std::span<const int>(elements.begin(), elements.size()));
}

void Subset::insert(int j) {
  if (j < 0 || j >= n_) {
    throw Error(ErrorCode::kContractViolation,
                "element " + std::to_string(j) + " outside ground set of size " +
                    std::to_string(n_));
  }
  bits_.set(j);
}

void Subset::erase(int j) {
  if (j < 0 || j >= n_) {
    throw Error(ErrorCode::kContractViolation,
                "element " + std::to_string(j) + " outside ground set");
  }
  bits_.reset(j);
}

Subset Subset::With(int j) const {
  Subset s = *this;
  s.insert(j);
  return s;
}

Subset Subset::Without(int j) const {
  Subset s = *this;
  s.erase(j);
  return s;
}

Subset Subset::Complement() const {
  Subset s = Full(n_);
  s.bits_ &= ~bits_;
  return s;
}

namespace {
void RequireSameDimension(const Subset& a, const Subset& b) {
  if (a.n() != b.n()) {
    throw Error(ErrorCode::kContractViolation,
                "subset dimensions differ: " + std::to_string(a.n()) + " vs " +
                    std::to_string(b.n()));
  }
}
}  // namespace

Subset Subset::operator|(const Subset& other) const {
  RequireSameDimension(*this, other);
  Subset s = *this;
  s.bits_ |= other.bits_;
  return s;
}

Subset Subset::operator&(const Subset& other) const {
  RequireSameDimension(*this, other);
  Subset s = *this;
  s.bits_ &= other.bits_;
  return s;
}

Subset Subset::operator-(const Subset& other) const {
  RequireSameDimension(*this, other);
  Subset s = *this;
  s.bits_ &= ~other.bits_;
  return s;
}

bool Subset::IsSubsetOf(const Subset& other) const {
  RequireSameDimension(*this, other);
  return (bits_ & ~other.bits_).none();
}

std::vector<int> Subset::Elements() const {
  std::vector<int> out;
  out.reserve(size());
  ForEach([&](int j) { out.push_back(j); });
  return out;
}

uint64_t Subset::ToMask() const {
  if (n_ > 64) {
    throw Error(ErrorCode::kContractViolation,
                "ToMask requires n <= 64, got " + std::to_string(n_));
  }
  return bits_.to_ullong();
}

std::string Subset::ToHex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int nibbles = std::max(1, (n_ + 3) / 4);
  std::string out = "0x";
  bool leading = true;
  for (int k = nibbles - 1; k >= 0; --k) {
    int v = 0;
    for (int b = 3; b >= 0; --b) {
      const int pos = 4 * k + b;
      v = (v << 1) | ((pos < n_ && bits_.test(pos)) ? 1 : 0);
    }
    if (leading && v == 0 && k > 0) continue;
    leading = false;
    out.push_back(kDigits[v]);
  }
  return out;
}

std::string Subset::ToString() const {
  std::string out = "{";
  bool first = true;
  ForEach([&](int j) {
    if (!first) out += ",";
    out += std::to_string(j);
    first = false;
  });
  return out + "}";
}

std::optional<Subset> SubsetFromHex(int n, const std::string& hex) {
  std::string digits = hex;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) {
    digits = digits.substr(2);
  }
  if (digits.empty()) return std::nullopt;
  Subset s(n);
  int pos = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it, pos += 4) {
    int v;
    const char c = *it;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      return std::nullopt;
    }
    for (int b = 0; b < 4; ++b) {
      if ((v >> b) & 1) {
        if (pos + b >= n) return std::nullopt;
        s.insert(pos + b);
      }
    }
  }
  return s;
}

void RequireEnumerable(int n, int limit, const char* what) {
  if (n > limit) {
    throw Error(ErrorCode::kScale,
                std::string(what) + " needs n <= " + std::to_string(limit) +
                    ", got n=" + std::to_string(n));
  }
}

}  // namespace curvsub
