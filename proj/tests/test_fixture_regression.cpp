#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "lock_util.hpp"
#include "pipeline_lock.hpp"

#ifndef MEANREV_DATA_DIR
#error "MEANREV_DATA_DIR must be defined by the build"
#endif
#ifndef MEANREV_LOCK_DIR
#error "MEANREV_LOCK_DIR must be defined by the build"
#endif

// Pins every scalar the canonical fixture pipeline produces. The first run
// writes tests/lock/pipeline.txt; committed locks make any later numerical
// drift a test failure with the exact key that moved.
TEST(FixtureRegression, PipelineLock) {
    lockfile::Lock lock(std::string(MEANREV_LOCK_DIR) + "/pipeline.txt");
    const bool fresh = !lock.existed();
    for (const auto& [key, value] : pipeline::pipeline_lock_values(MEANREV_DATA_DIR)) {
        ASSERT_TRUE(std::isfinite(value)) << key << " is not finite";
        lock.record(key, value);
    }
    const std::vector<std::string> failures = lock.finalize();
    for (const std::string& failure : failures) ADD_FAILURE() << failure;
    if (fresh)
        std::cout << "[ NOTE ] lock file written; rerun to verify reproducibility\n";
}

// A second in-process evaluation must reproduce the first bit for bit
// (thread-free pipeline, deterministic seeds).
TEST(FixtureRegression, PipelineIsDeterministicInProcess) {
    const auto a = pipeline::pipeline_lock_values(MEANREV_DATA_DIR);
    const auto b = pipeline::pipeline_lock_values(MEANREV_DATA_DIR);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].first, b[i].first);
        EXPECT_EQ(a[i].second, b[i].second) << a[i].first;
    }
}
