#pragma once

#include <map>
#include <memory>
#include <utility>

#include "canimm/numbering.hpp"

namespace canimm::detail {

// D_e(i) for a registered pool, each value computed once.
class PoolCache {
 public:
  explicit PoolCache(const Registry& pool) : pool_(pool) {
    for (std::size_t e = 0; e < pool.size(); ++e) evaluators_.push_back(std::make_unique<Evaluator>());
  }

  std::size_t size() const { return pool_.size(); }

  const FiniteSet& at(std::uint64_t e, std::uint64_t i) {
    auto key = std::make_pair(e, i);
    auto it = values_.find(key);
    if (it != values_.end()) return it->second;
    return values_.emplace(key, pool_[e].at(i, evaluators_[e].get())).first->second;
  }

 private:
  const Registry& pool_;
  std::vector<std::unique_ptr<Evaluator>> evaluators_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, FiniteSet> values_;
};

}  // namespace canimm::detail
