/*
Copyright 2026 The Taskforge Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "taskforge/random_tap.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace taskforge {

namespace {

// Draws in [lo, hi]; modulo bias is irrelevant at these ranges and keeps the
// stream identical across standard libraries.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::pair<Scalar, Scalar> draw_works(std::mt19937_64& rng) {
  const long e = draw(rng, -5, 4);
  const long m = draw(rng, 1024, 2047);
  Scalar sigma = Scalar(m, 1024) * pow2(static_cast<int>(e));
  Scalar pi = sigma * Scalar(draw(rng, 1, 64), 64);
  return {sigma, pi};
}

// SPDP works: parallel work between sigma (perfect speedup) and p * sigma.
std::pair<Scalar, Scalar> draw_spdp_works(std::mt19937_64& rng, long p) {
  const long e = draw(rng, -5, 4);
  const long m = draw(rng, 1024, 2047);
  Scalar sigma = Scalar(m, 1024) * pow2(static_cast<int>(e));
  Scalar pi = sigma * Scalar(64 + (p - 1) * draw(rng, 0, 64), 64);
  return {sigma, pi};
}

Task quarter_task(std::mt19937_64& rng) {
  Task t;
  t.sigma = Scalar(draw(rng, 1, 8), 4);
  t.pi = Scalar(draw(rng, 1, 8), 4);
  const long flip = draw(rng, 0, 9);
  if (flip == 0) t.sigma = Scalar::infinity();
  if (flip == 1) t.pi = Scalar::infinity();
  t.arrival = Scalar(0);
  return t;
}

}  // namespace

Tap random_tap(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Scalar, Scalar>> works;
  std::vector<Scalar> arrivals;
  for (std::size_t i = 0; i < n; ++i) {
    works.push_back(draw_works(rng));
    arrivals.emplace_back(draw(rng, 0, 16 * static_cast<long>(n)), 64);
  }
  std::sort(arrivals.begin(), arrivals.end());
  Tap tap;
  for (std::size_t i = 0; i < n; ++i) tap.add(works[i].first, works[i].second, arrivals[i]);
  return tap;
}

Tap random_spdp_tap(std::size_t n, long p, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("random_spdp_tap: p must be positive");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Scalar, Scalar>> works;
  std::vector<Scalar> arrivals;
  for (std::size_t i = 0; i < n; ++i) {
    works.push_back(draw_spdp_works(rng, p));
    arrivals.emplace_back(draw(rng, 0, 16 * static_cast<long>(n)), 64);
  }
  std::sort(arrivals.begin(), arrivals.end());
  Tap tap;
  for (std::size_t i = 0; i < n; ++i) tap.add(works[i].first, works[i].second, arrivals[i]);
  return tap;
}

Tap random_single_arrival(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tap tap;
  for (std::size_t i = 0; i < n; ++i) {
    auto [s, p] = draw_works(rng);
    tap.add(s, p, Scalar(0));
  }
  return tap;
}

Tap random_small_tap(std::size_t n, long max_work, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tap tap;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s(draw(rng, 1, max_work));
    Scalar p(draw(rng, 1, max_work));
    tap.add(s, p, Scalar(0));
  }
  return tap;
}

Dtap random_chain_dtap(std::size_t n, std::size_t chains, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Dtap d;
  for (std::size_t i = 0; i < n; ++i) {
    Task t = quarter_task(rng);
    d.tap.add(t.sigma, t.pi, t.arrival);
  }
  if (chains == 0 || n == 0) return d;
  std::vector<std::optional<std::size_t>> last(chains);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(chains) - 1));
    if (last[c]) d.deps.emplace_back(*last[c], i);
    last[c] = i;
  }
  return d;
}

Dtap random_component_dtap(std::size_t n, std::size_t L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Dtap d;
  for (std::size_t i = 0; i < n; ++i) {
    Task t = quarter_task(rng);
    d.tap.add(t.sigma, t.pi, t.arrival);
  }
  std::size_t start = 0;
  while (start < n) {
    const auto size = std::min<std::size_t>(n - start, static_cast<std::size_t>(draw(rng, 1, static_cast<long>(std::max<std::size_t>(L, 1)))));
    for (std::size_t j = start + 1; j < start + size; ++j) {
      // each task depends on one or two earlier members
      const auto u = start + static_cast<std::size_t>(draw(rng, 0, static_cast<long>(j - start) - 1));
      d.deps.emplace_back(u, j);
      if (j - start >= 2 && draw(rng, 0, 2) == 0) {
        const auto w = start + static_cast<std::size_t>(draw(rng, 0, static_cast<long>(j - start) - 1));
        if (w != u) d.deps.emplace_back(w, j);
      }
    }
    start += size;
  }
  return d;
}

}  // namespace taskforge
