#pragma once

#include <optional>
#include <vector>

#include "semsnap/canvas.hpp"
#include "semsnap/operations.hpp"

namespace semsnap {

struct PendingOperation {
  Canvas before;
  Canvas after;
  OperationPlan plan;
};

// Linear history with at most one operation awaiting keep or undo.
class CanvasHistory {
 public:
  explicit CanvasHistory(Canvas initial);

  // The pending preview if any, else the last committed snapshot.
  const Canvas& current() const;
  const std::vector<Canvas>& committed() const noexcept { return committed_; }
  const std::optional<PendingOperation>& pending() const noexcept { return pending_; }

  // Throws Error(PendingOperation) while another operation is pending.
  void begin(const OperationPlan& plan, Canvas after);
  // Returns the restored canvas. Throws Error(NothingPending).
  const Canvas& undo();
  // Throws Error(NothingPending).
  const Canvas& keep();

  // Replaces the registry of the committed head (used when a confirmation is
  // answered without a rewrite). Throws Error(PendingOperation).
  void amend_registry(EquivalenceRegistry registry);

 private:
  std::vector<Canvas> committed_;
  std::optional<PendingOperation> pending_;
};

}  // namespace semsnap
