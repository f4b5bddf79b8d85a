// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#ifndef JACOBIHEAT_UTIL_HPP
#define JACOBIHEAT_UTIL_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace jacobiheat {

enum class Status {
    ok = 0,
    invalid_argument,
    precision_floor,
    no_convergence,
    overflow,
    infeasible,
    internal
};

/// Library error carrying a machine-readable status code alongside the message.
class Error : public std::runtime_error {
  public:
    Error(Status s, const std::string& msg) : std::runtime_error(msg), status_(s) {}
    Status status() const { return status_; }

  private:
    Status status_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
    throw Error(Status::invalid_argument, msg);
}

/// Caps worker threads used by grid sweeps. 0 restores the hardware default.
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, n). Work is chunked over the thread cap; fn must
/// only write to per-index slots so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

inline double sq(double x) { return x * x; }

}  // namespace jacobiheat

#endif
