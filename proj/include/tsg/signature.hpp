// Parameter list (n_1, ..., n_k) of a Thompson-Stein group.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsg {

/// Raised when an operation needs (n_1 - 1) | (n_j - 1) for every j and the
/// signature does not satisfy it.
class DivisibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class GroupSignature {
 public:
  /// Arities are sorted; duplicates, values below 2 and empty lists are
  /// rejected with std::invalid_argument.
  explicit GroupSignature(std::vector<int> arities);

  /// Parses "2,3,5".
  static GroupSignature parse(std::string_view text);

  const std::vector<int>& arities() const { return arities_; }
  std::size_t size() const { return arities_.size(); }
  int arity(std::size_t index) const { return arities_[index]; }
  int min_arity() const { return arities_.front(); }
  int max_arity() const { return arities_.back(); }

  /// 0-based position of an arity, or -1.
  int index_of(int arity) const;
  bool contains(int arity) const { return index_of(arity) >= 0; }

  /// (n_1 - 1) | (n_j - 1) for all j.
  bool divisible() const { return divisible_; }
  void require_divisible(std::string_view what) const;

  /// (n_j - 1) / (n_1 - 1) for 0-based j; requires divisibility.
  int vine_factor(std::size_t index) const;

  /// n_1 * ... * n_k.
  long product() const;

  std::string str() const;

  friend bool operator==(const GroupSignature& a, const GroupSignature& b) {
    return a.arities_ == b.arities_;
  }

 private:
  std::vector<int> arities_;
  bool divisible_ = true;
};

}  // namespace tsg
