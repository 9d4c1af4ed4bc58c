#include "semsnap/history.hpp"

#include "semsnap/error.hpp"

namespace semsnap {

CanvasHistory::CanvasHistory(Canvas initial) { committed_.push_back(std::move(initial)); }

const Canvas& CanvasHistory::current() const { return pending_ ? pending_->after : committed_.back(); }

void CanvasHistory::begin(const OperationPlan& plan, Canvas after) {
  if (pending_) throw Error(ErrorCode::PendingOperation, "keep or undo the pending operation first");
  pending_ = PendingOperation{committed_.back(), std::move(after), plan};
}

const Canvas& CanvasHistory::undo() {
  if (!pending_) throw Error(ErrorCode::NothingPending, "no operation to undo");
  pending_.reset();
  return committed_.back();
}

const Canvas& CanvasHistory::keep() {
  if (!pending_) throw Error(ErrorCode::NothingPending, "no operation to keep");
  committed_.push_back(std::move(pending_->after));
  pending_.reset();
  return committed_.back();
}

void CanvasHistory::amend_registry(EquivalenceRegistry registry) {
  if (pending_) throw Error(ErrorCode::PendingOperation, "keep or undo the pending operation first");
  committed_.back().registry = std::move(registry);
}

}  // namespace semsnap
