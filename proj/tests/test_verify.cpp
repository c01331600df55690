#include <gtest/gtest.h>

#include "ncp/error.hpp"
#include "ncp/verify.hpp"

using namespace ncp;

TEST(Suites, AllPassUpToFour) {
    for (const auto& s : suite_names())
        for (int n = 1; n <= 4; ++n) {
            const auto r = run_suite(s, n, {});
            EXPECT_TRUE(r.ok()) << s << " n=" << n << (r.failures.empty() ? "" : ": " + r.failures.front());
            if (n > 1) EXPECT_GT(r.checks, 0) << s << " n=" << n;
        }
}

TEST(Suites, LargerSizesWithinCaps) {
    for (const auto& [s, n] : std::vector<std::pair<std::string, int>>{
             {"adjacency", 6}, {"compat", 7}, {"links", 5}, {"cells", 7}, {"relators", 6}})
        EXPECT_TRUE(run_suite(s, n, {}).ok()) << s << " n=" << n;
    VerifyOptions raised;
    raised.cap_override = 5;
    EXPECT_TRUE(run_suite("assoc", 5, raised).ok());
}

TEST(Suites, Caps) {
    EXPECT_EQ(suite_cap("assoc", {}), 4);
    EXPECT_EQ(suite_cap("links", {}), 6);
    EXPECT_EQ(suite_cap("relators", {}), 6);
    VerifyOptions wide;
    wide.cap_override = 9;
    for (const auto& s : suite_names()) EXPECT_EQ(suite_cap(s, wide), 9);
    EXPECT_THROW(run_suite("assoc", 5, {}), UsageError);
    EXPECT_THROW(run_suite("nope", 3, {}), UsageError);
    EXPECT_THROW(run_suite("cells", 0, {}), UsageError);
}

TEST(Suites, MorphismCountsForThree) {
    const auto counts = morphism_counts(3);
    EXPECT_EQ(counts.at(0), 5);
    EXPECT_EQ(counts.at(1), 11);
    EXPECT_EQ(counts.at(2), 5);
}

TEST(Suites, SeedChangesOnlySampling) {
    VerifyOptions a, b;
    a.seed = 1;
    b.seed = 99;
    EXPECT_TRUE(run_suite("adjacency", 5, a).ok());
    EXPECT_TRUE(run_suite("adjacency", 5, b).ok());
    EXPECT_EQ(run_suite("adjacency", 5, a).checks, run_suite("adjacency", 5, a).checks);
}
