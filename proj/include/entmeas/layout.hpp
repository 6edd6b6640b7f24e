// layout.hpp
// Ordered party labels and local dimensions.

#pragma once

#include "entmeas/common.hpp"

#include <algorithm>

namespace entmeas {

class PartyLayout {
 public:
  PartyLayout() = default;

  PartyLayout(std::vector<int> dims, std::vector<std::string> labels)
      : dims_(std::move(dims)), labels_(std::move(labels)) {
    validate();
  }

  explicit PartyLayout(std::vector<int> dims) : dims_(std::move(dims)) {
    labels_.reserve(dims_.size());
    for (size_t j = 0; j < dims_.size(); ++j)
      labels_.push_back("A" + std::to_string(j + 1));
    validate();
  }

  static PartyLayout qubits(int n) { return PartyLayout(std::vector<int>(n, 2)); }
  static PartyLayout qudits(int n, int d) { return PartyLayout(std::vector<int>(n, d)); }

  int num_parties() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int dim(int j) const { return dims_[static_cast<size_t>(j)]; }
  long total_dim() const { return entmeas::total_dim(dims_); }
  std::vector<long> strides() const { return index_strides(dims_); }

  bool all_dims_equal() const {
    return std::all_of(dims_.begin(), dims_.end(),
                       [&](int d) { return d == dims_.front(); });
  }

  int party_index(const std::string& label) const {
    for (size_t j = 0; j < labels_.size(); ++j)
      if (labels_[j] == label) return static_cast<int>(j);
    throw std::invalid_argument("unknown party label: " + label);
  }

  // Dimension-1 parties are padding and must be removed before solving.
  PartyLayout stripped() const {
    std::vector<int> d;
    std::vector<std::string> l;
    for (size_t j = 0; j < dims_.size(); ++j)
      if (dims_[j] > 1) {
        d.push_back(dims_[j]);
        l.push_back(labels_[j]);
      }
    if (d.empty()) {
      d.push_back(1);
      l.push_back(labels_.empty() ? "A1" : labels_.front());
    }
    return PartyLayout(std::move(d), std::move(l));
  }

  bool operator==(const PartyLayout& o) const {
    return dims_ == o.dims_ && labels_ == o.labels_;
  }

 private:
  void validate() const {
    if (dims_.empty()) throw std::invalid_argument("layout needs at least one party");
    if (labels_.size() != dims_.size())
      throw std::invalid_argument("labels/dims length mismatch");
    for (int d : dims_)
      if (d < 1) throw std::invalid_argument("local dimension must be positive");
  }

  std::vector<int> dims_;
  std::vector<std::string> labels_;
};

}  // namespace entmeas
