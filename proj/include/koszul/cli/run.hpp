#pragma once

#include "koszul/cli/report.hpp"
#include "koszul/cli/request.hpp"
#include "koszul/deformation/mc.hpp"

namespace koszul::cli {

enum ExitCode : int { kPass = 0, kIdentityFailure = 1, kInvalidInput = 2, kInternalError = 3 };

/// Runs the requested suites in order. Throws InputError for anything wrong
/// with the request (including caps the suites cannot honour) and
/// std::logic_error when a library invariant breaks, e.g. a failed check
/// without a witness. meta.wall_clock_ms is left at 0 for the caller.
Report run_verify(const CheckRequest& request);

inline int exit_code(const Report& r) { return r.passed() ? kPass : kIdentityFailure; }

/// The mc suite on a finite DGLA: every datum (or, with none given, every
/// H^1 representative) is lifted to `order`; lifts are checked against the
/// MC equation, along gauge orbits and against BCH composition.
Certificate mc_suite(const FiniteDGLA& L, const std::vector<Vec>& data, int order);

}  // namespace koszul::cli
