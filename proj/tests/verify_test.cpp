#include "qadder/verify.hpp"

#include "gtest/gtest.h"

using namespace qadder;

TEST(verify, all_suites_pass_at_default_seed) {
    const auto results = run_verification({});
    ASSERT_EQ(results.size(), 8u);
    for (const auto &r : results) {
        EXPECT_TRUE(r.passed()) << r.name << ": " << r.detail;
        EXPECT_GT(r.checked, 0u) << r.name;
    }
    EXPECT_TRUE(all_passed(results));
}

TEST(verify, suite_sizes) {
    const auto results = run_verification({});
    EXPECT_EQ(results[0].name, "measurement_entropy");
    EXPECT_EQ(results[0].checked, 2000u);
    EXPECT_EQ(results[1].checked, 500u);
    EXPECT_EQ(results[2].checked, 303u);
    EXPECT_EQ(results[3].name, "bell_invariance");
    EXPECT_EQ(results[3].checked, 16u + 4u + 4u + 200u);
    EXPECT_EQ(results[4].checked, 400u);
    EXPECT_EQ(results[5].checked, 200u);
    EXPECT_EQ(results[7].checked, 50u);
}

TEST(verify, other_seed_passes) {
    for (const auto &r : run_verification({7, false})) {
        EXPECT_TRUE(r.passed()) << r.name << ": " << r.detail;
    }
}

TEST(verify, deterministic) {
    EXPECT_EQ(run_verification({11, false}), run_verification({11, false}));
}

TEST(verify, corrupted_psi_minus_fails_only_bell_suite) {
    const auto results = run_verification({42, true});
    EXPECT_FALSE(all_passed(results));
    for (const auto &r : results) {
        EXPECT_EQ(r.passed(), r.name != "bell_invariance") << r.name;
    }
    EXPECT_FALSE(results[3].detail.empty());
}
