#include "arbor/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace arbor {

Perm::Perm(std::size_t n) : img_(n) { std::iota(img_.begin(), img_.end(), 0u); }

Perm Perm::from_images1(const std::vector<std::uint32_t>& images1) {
  Perm p;
  p.img_.resize(images1.size());
  std::vector<bool> seen(images1.size(), false);
  for (std::size_t i = 0; i < images1.size(); ++i) {
    std::uint32_t v = images1[i];
    if (v < 1 || v > images1.size() || seen[v - 1])
      throw std::invalid_argument("Perm: image list is not a bijection");
    seen[v - 1] = true;
    p.img_[i] = v - 1;
  }
  return p;
}

Perm Perm::from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles) {
  Perm p(n);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      std::uint32_t a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a < 1 || a > n || b < 1 || b > n)
        throw std::invalid_argument("Perm: cycle point out of range");
      if (p.img_[a - 1] != a - 1) throw std::invalid_argument("Perm: cycles not disjoint");
      p.img_[a - 1] = b - 1;
    }
  }
  return p;
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree()) throw std::invalid_argument("Perm: degree mismatch");
  Perm r;
  r.img_.resize(degree());
  for (std::size_t x = 0; x < degree(); ++x) r.img_[x] = img_[rhs.img_[x]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(degree());
  for (std::size_t x = 0; x < degree(); ++x) r.img_[img_[x]] = static_cast<std::uint32_t>(x);
  return r;
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < degree(); ++x)
    if (img_[x] != x) return false;
  return true;
}

int Perm::sign() const {
  std::vector<bool> seen(degree(), false);
  std::size_t cycles = 0;
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x]) continue;
    ++cycles;
    for (std::uint32_t y = static_cast<std::uint32_t>(x); !seen[y]; y = img_[y]) seen[y] = true;
  }
  return ((degree() - cycles) % 2 == 0) ? 1 : -1;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<bool> seen(degree(), false);
  std::vector<int> type;
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x]) continue;
    int len = 0;
    for (std::uint32_t y = static_cast<std::uint32_t>(x); !seen[y]; y = img_[y]) {
      seen[y] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

std::uint64_t Perm::order() const {
  std::uint64_t ord = 1;
  for (int len : cycle_type()) ord = std::lcm(ord, static_cast<std::uint64_t>(len));
  return ord;
}

std::uint32_t Perm::smallest_moved() const {
  for (std::uint32_t x = 0; x < degree(); ++x)
    if (img_[x] != x) return x;
  return static_cast<std::uint32_t>(degree());
}

std::string Perm::cycle_string() const {
  std::vector<bool> seen(degree(), false);
  std::string out;
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x] || img_[x] == x) {
      seen[x] = true;
      continue;
    }
    out += '(';
    bool first = true;
    for (std::uint32_t y = static_cast<std::uint32_t>(x); !seen[y]; y = img_[y]) {
      seen[y] = true;
      if (!first) out += ' ';
      out += std::to_string(y + 1);
      first = false;
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

std::size_t PermHash::operator()(const Perm& p) const {
  std::size_t h = 1469598103934665603ull;
  for (std::uint32_t i = 0; i < p.degree(); ++i) {
    h ^= p(i);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace arbor
