#include "tsg/signature.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace tsg {

GroupSignature::GroupSignature(std::vector<int> arities)
    : arities_(std::move(arities)) {
  if (arities_.empty()) {
    throw std::invalid_argument("group signature needs at least one arity");
  }
  std::sort(arities_.begin(), arities_.end());
  if (arities_.front() < 2) {
    throw std::invalid_argument("arities must be at least 2");
  }
  if (std::adjacent_find(arities_.begin(), arities_.end()) != arities_.end()) {
    throw std::invalid_argument("duplicate arity in group signature");
  }
  int base = arities_.front() - 1;
  divisible_ = std::all_of(arities_.begin(), arities_.end(),
                           [base](int n) { return (n - 1) % base == 0; });
}

GroupSignature GroupSignature::parse(std::string_view text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto piece = text.substr(pos, comma - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    int value = 0;
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || end != piece.data() + piece.size()) {
      throw std::invalid_argument("malformed group signature '" +
                                  std::string(text) + "'");
    }
    values.push_back(value);
    pos = comma + 1;
  }
  return GroupSignature(std::move(values));
}

int GroupSignature::index_of(int arity) const {
  auto it = std::lower_bound(arities_.begin(), arities_.end(), arity);
  if (it == arities_.end() || *it != arity) return -1;
  return static_cast<int>(it - arities_.begin());
}

void GroupSignature::require_divisible(std::string_view what) const {
  if (!divisible_) {
    throw DivisibilityError(
        std::string(what) + " requires (n_1 - 1) | (n_j - 1) for every j; F(" +
        str() + ") does not satisfy this restriction");
  }
}

int GroupSignature::vine_factor(std::size_t index) const {
  require_divisible("vine factor");
  return (arities_[index] - 1) / (arities_.front() - 1);
}

long GroupSignature::product() const {
  long p = 1;
  for (int n : arities_) p *= n;
  return p;
}

std::string GroupSignature::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < arities_.size(); ++i) {
    if (i) os << ',';
    os << arities_[i];
  }
  return os.str();
}

}  // namespace tsg
