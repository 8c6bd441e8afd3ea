#pragma once

namespace bcp {

enum class WBranch { principal = 0, lower = -1 };

/// Real Lambert W: returns w with w * exp(w) == x.
/// Principal branch is defined on [-1/e, inf), lower branch on [-1/e, 0).
/// Throws DomainError outside the branch domain.
double lambert_w(WBranch branch, double x);

}  // namespace bcp
