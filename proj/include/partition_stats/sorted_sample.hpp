#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "partition_stats/errors.hpp"

namespace partition_stats {

/// Validated ascending sample of finite observations. Input is copied and
/// sorted at construction; exact duplicates are recorded as tie runs but
/// not rejected. Immutable, and cheap to copy (storage is shared).
class SortedSample {
 public:
  /// A maximal run of equal values, as [first, last] positions in the
  /// sorted order.
  struct TieRun {
    std::size_t first;
    std::size_t last;
    bool operator==(const TieRun&) const = default;
  };

  explicit SortedSample(std::span<const double> data) {
    if (data.empty()) {
      throw Error(errc::empty_input, "sample must contain at least one value");
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!std::isfinite(data[i])) {
        throw Error(errc::non_finite_value,
                    "non-finite value at input index " + std::to_string(i),
                    static_cast<long>(i));
      }
    }
    auto storage = std::make_shared<Storage>();
    storage->values.assign(data.begin(), data.end());
    std::sort(storage->values.begin(), storage->values.end());

    const auto& v = storage->values;
    for (std::size_t i = 0; i + 1 < v.size();) {
      std::size_t j = i;
      while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
      if (j > i) storage->ties.push_back({i, j});
      i = j + 1;
    }
    storage_ = std::move(storage);
  }

  explicit SortedSample(std::initializer_list<double> data)
      : SortedSample(std::span<const double>(data.begin(), data.size())) {}

  std::size_t size() const { return storage_->values.size(); }
  const std::vector<double>& values() const { return storage_->values; }
  double operator[](std::size_t i) const { return storage_->values[i]; }
  double min() const { return storage_->values.front(); }
  double max() const { return storage_->values.back(); }

  const std::vector<TieRun>& ties() const { return storage_->ties; }
  bool has_ties() const { return !storage_->ties.empty(); }

  /// True when the two samples share the same underlying storage.
  bool shares_storage_with(const SortedSample& other) const {
    return storage_ == other.storage_;
  }

 private:
  struct Storage {
    std::vector<double> values;
    std::vector<TieRun> ties;
  };
  std::shared_ptr<const Storage> storage_;
};

}  // namespace partition_stats
