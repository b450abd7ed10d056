// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace ffext {

/// Worker count: the FFEXT_THREADS environment variable when set (clamped to
/// at least 1), otherwise the hardware concurrency.
int thread_count();

/// Runs fn(0..n-1), possibly concurrently. Each index is processed exactly
/// once and the body runs sequentially per index, so writers to disjoint
/// slots produce results independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ffext
