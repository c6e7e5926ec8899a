#include <gtest/gtest.h>

#include <atomic>
#include <string>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "fbvp/parallel.hpp"

namespace fbvp {
namespace {

TEST(ParallelFor, VisitsEachIndexOnce) {
  std::vector<std::atomic<int>> hits(10007);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsLowestFailure) {
  try {
    parallel_for(1000, [](std::size_t i) {
      if (i == 700 || i == 300) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "300");
  }
}

TEST(ThreadCount, HonoursEnvironment) {
  const char* old = std::getenv("FBVP_THREADS");
  const std::string saved = old ? old : "";
  setenv("FBVP_THREADS", "0", 1);
  EXPECT_EQ(thread_count(), 1u);
  setenv("FBVP_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3u);
  std::vector<int> out(50);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  if (old) {
    setenv("FBVP_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("FBVP_THREADS");
  }
}

}  // namespace
}  // namespace fbvp
