#pragma once

// Multi-index bookkeeping for local linear extension variables.
//
// A multi-index alpha = (alpha_1, ..., alpha_j) with components in [1, n]
// names the polynomial (x - xhat)^alpha. Multi-indices that differ only by a
// permutation describe the same polynomial, so every one of them is reduced
// to its sorted representative. The catalog fixes the layout of the
// extension vector: degree 0, then the degree-1 block in component order,
// then each higher degree in lexicographic order of sorted components.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lleei {

/// Components are 1-based variable indices. Length 0 is the empty index.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> c) : components_(c) {}
  explicit MultiIndex(std::vector<int> c) : components_(std::move(c)) {}

  [[nodiscard]] std::size_t size() const noexcept { return components_.size(); }
  [[nodiscard]] bool empty() const noexcept { return components_.empty(); }
  [[nodiscard]] int operator[](std::size_t i) const { return components_[i]; }
  [[nodiscard]] const std::vector<int>& components() const noexcept { return components_; }

  [[nodiscard]] auto begin() const noexcept { return components_.begin(); }
  [[nodiscard]] auto end() const noexcept { return components_.end(); }

  [[nodiscard]] bool is_sorted() const { return std::is_sorted(components_.begin(), components_.end()); }

  void push_back(int c) { components_.push_back(c); }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) = default;

  friend std::ostream& operator<<(std::ostream& os, const MultiIndex& a) {
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i != 0) os << ',';
      os << a[i];
    }
    return os << ')';
  }

 private:
  std::vector<int> components_;
};

namespace detail {

inline void check_range(const MultiIndex& alpha, int n) {
  for (int c : alpha) {
    if (c < 1 || c > n) {
      throw std::out_of_range("multi-index component " + std::to_string(c) + " outside [1, " +
                              std::to_string(n) + "]");
    }
  }
}

inline long long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long result = 1;
  for (int i = 1; i <= r; ++i) result = result * (n - r + i) / i;
  return result;
}

}  // namespace detail

/// Sorted copy of alpha; every equivalent index maps to the same result.
[[nodiscard]] inline MultiIndex representative(const MultiIndex& alpha) {
  auto c = alpha.components();
  std::sort(c.begin(), c.end());
  return MultiIndex(std::move(c));
}

/// Range-checked variant: components must lie in [1, n].
[[nodiscard]] inline MultiIndex representative(const MultiIndex& alpha, int n) {
  detail::check_range(alpha, n);
  return representative(alpha);
}

/// Product of factorials of the multiplicity of each distinct value.
[[nodiscard]] inline long long gamma(const MultiIndex& alpha) {
  const MultiIndex sorted = representative(alpha);
  long long result = 1;
  long long run = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    run = (i > 0 && sorted[i] == sorted[i - 1]) ? run + 1 : 1;
    result *= run;
  }
  return result;
}

/// Drop the l-th component (1-based) of alpha.
[[nodiscard]] inline MultiIndex remove_component(const MultiIndex& alpha, std::size_t l) {
  if (l < 1 || l > alpha.size()) {
    throw std::out_of_range("remove_component: position " + std::to_string(l) +
                            " outside [1, " + std::to_string(alpha.size()) + "]");
  }
  auto c = alpha.components();
  c.erase(c.begin() + static_cast<std::ptrdiff_t>(l - 1));
  return MultiIndex(std::move(c));
}

/// Multiset union of two indices, returned as a representative.
[[nodiscard]] inline MultiIndex merge(const MultiIndex& a, const MultiIndex& b) {
  std::vector<int> c;
  c.reserve(a.size() + b.size());
  c.insert(c.end(), a.begin(), a.end());
  c.insert(c.end(), b.begin(), b.end());
  std::sort(c.begin(), c.end());
  return MultiIndex(std::move(c));
}

/// Ordered set of representatives of all multisets of size <= k over
/// {1, ..., n}. Immutable after construction.
class MultiIndexCatalog {
 public:
  MultiIndexCatalog(int n_vars, int k) : n_(n_vars), k_(k) {
    if (n_vars < 2) throw std::invalid_argument("catalog needs at least 2 variables (d+1 >= 2)");
    if (k < 1) throw std::invalid_argument("catalog degree k must be >= 1");

    block_start_.push_back(0);
    representatives_.emplace_back();
    block_dims_.push_back(1);
    // Each degree-j block is generated in lexicographic order by extending
    // the degree-(j-1) block with a component >= the last one.
    std::vector<MultiIndex> previous{MultiIndex{}};
    for (int j = 1; j <= k; ++j) {
      std::vector<MultiIndex> current;
      for (const auto& base : previous) {
        const int lo = base.empty() ? 1 : base.components().back();
        for (int c = lo; c <= n_; ++c) {
          MultiIndex next = base;
          next.push_back(c);
          current.push_back(std::move(next));
        }
      }
      block_start_.push_back(representatives_.size());
      block_dims_.push_back(current.size());
      representatives_.insert(representatives_.end(), current.begin(), current.end());
      previous = std::move(current);
    }
    for (std::size_t i = 0; i < representatives_.size(); ++i) position_.emplace(representatives_[i], i);
  }

  [[nodiscard]] int n_vars() const noexcept { return n_; }
  [[nodiscard]] int degree() const noexcept { return k_; }
  [[nodiscard]] std::size_t size() const noexcept { return representatives_.size(); }
  [[nodiscard]] const std::vector<MultiIndex>& representatives() const noexcept { return representatives_; }
  [[nodiscard]] const MultiIndex& operator[](std::size_t i) const { return representatives_[i]; }
  [[nodiscard]] const std::vector<std::size_t>& block_dims() const noexcept { return block_dims_; }
  [[nodiscard]] std::size_t block_start(int j) const { return block_start_.at(static_cast<std::size_t>(j)); }
  [[nodiscard]] int degree_of(std::size_t i) const { return static_cast<int>(representatives_.at(i).size()); }

  /// 0-based position of the representative of alpha, if |alpha| <= k.
  [[nodiscard]] std::optional<std::size_t> find(const MultiIndex& alpha) const {
    if (alpha.size() > static_cast<std::size_t>(k_)) return std::nullopt;
    for (int c : alpha) {
      if (c < 1 || c > n_) return std::nullopt;
    }
    const auto it = position_.find(alpha.is_sorted() ? alpha : representative(alpha));
    if (it == position_.end()) return std::nullopt;
    return it->second;
  }

  /// Like find() but throws when alpha is not in the catalog.
  [[nodiscard]] std::size_t position(const MultiIndex& alpha) const {
    detail::check_range(alpha, n_);
    if (auto p = find(alpha)) return *p;
    throw std::out_of_range("multi-index of degree " + std::to_string(alpha.size()) +
                            " exceeds catalog degree " + std::to_string(k_));
  }

 private:
  int n_;
  int k_;
  std::vector<MultiIndex> representatives_;
  std::vector<std::size_t> block_dims_;
  std::vector<std::size_t> block_start_;
  std::map<MultiIndex, std::size_t> position_;
};

[[nodiscard]] inline MultiIndexCatalog build_catalog(int n_vars, int k) { return MultiIndexCatalog(n_vars, k); }

/// Number of multisets of size j over n symbols.
[[nodiscard]] inline long long multiset_count(int n, int j) { return detail::binomial(n + j - 1, j); }

}  // namespace lleei
