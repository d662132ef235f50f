#include "blockspec/partition.hpp"

#include <utility>

namespace blockspec {

Partition::Partition(DimFn dims, std::optional<Index> block_count,
                     LabelFn label) {
  if (!dims) throw DomainError("Partition: dimension generator is empty");
  if (block_count && *block_count < 0)
    throw DomainError("Partition: negative block count");
  impl_ = std::make_shared<const Impl>(
      Impl{std::move(dims), block_count, std::move(label)});
}

Partition Partition::from_dims(std::vector<Index> dims) {
  auto store = std::make_shared<std::vector<Index>>(std::move(dims));
  const Index count = static_cast<Index>(store->size());
  return Partition([store](Index l) { return (*store)[static_cast<size_t>(l)]; },
                   count);
}

Partition Partition::constant(Index dim, std::optional<Index> block_count) {
  return Partition([dim](Index) { return dim; }, block_count);
}

Index Partition::dim(Index l) const {
  if (l < 0) throw DomainError("Partition: negative block index");
  if (impl_->count && l >= *impl_->count)
    throw DomainError("Partition: block index " + std::to_string(l) +
                      " out of range (count " + std::to_string(*impl_->count) +
                      ")");
  const Index d = impl_->dims(l);
  if (d < 1)
    throw DomainError("Partition: block " + std::to_string(l) +
                      " has dimension " + std::to_string(d));
  return d;
}

std::string Partition::label(Index l) const {
  if (impl_->label) return impl_->label(l);
  return std::to_string(l);
}

Partition Partition::truncated(Index count) const {
  if (count < 0) throw DomainError("Partition: negative truncation count");
  if (impl_->count && count > *impl_->count) count = *impl_->count;
  auto impl = impl_;
  return Partition([impl](Index l) { return impl->dims(l); }, count,
                   impl->label ? LabelFn([impl](Index l) {
                     return impl->label(l);
                   })
                               : LabelFn());
}

Index common_block_dim(const Partition& a, const Partition& b, Index l) {
  const Index da = a.dim(l);
  const Index db = b.dim(l);
  if (da != db)
    throw DimensionMismatchError(
        "block " + std::to_string(l) + ": dimensions disagree (" +
        std::to_string(da) + " vs " + std::to_string(db) + ")");
  return da;
}

}  // namespace blockspec
