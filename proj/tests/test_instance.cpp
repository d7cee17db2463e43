#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "beesvrp/instance.hpp"
#include "oracle.hpp"

namespace beesvrp {
namespace {

constexpr const char* minimal = R"(NAME: tiny
CAPACITY: 10
DEPOT: 0 0
CUSTOMERS:
1 3 4 5
)";

void expect_same(const Instance& a, const Instance& b) {
  EXPECT_EQ(a.name(), b.name());
  EXPECT_EQ(a.customer_count(), b.customer_count());
  EXPECT_EQ(a.capacity(), b.capacity());
  EXPECT_EQ(a.max_duration(), b.max_duration());
  EXPECT_EQ(a.depot().x, b.depot().x);
  EXPECT_EQ(a.depot().y, b.depot().y);
  for (int c = 1; c <= a.customer_count(); ++c) {
    EXPECT_EQ(a.customer(c).x, b.customer(c).x);
    EXPECT_EQ(a.customer(c).y, b.customer(c).y);
    EXPECT_EQ(a.customer(c).demand, b.customer(c).demand);
    EXPECT_EQ(a.customer(c).service_time, b.customer(c).service_time);
  }
}

std::size_t error_line(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string error_field(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return {};
}

TEST(ParseInstance, MinimalFile) {
  const auto inst = parse_instance(minimal);
  EXPECT_EQ(inst.name(), "tiny");
  EXPECT_EQ(inst.customer_count(), 1);
  EXPECT_EQ(inst.capacity(), 10.0);
  EXPECT_FALSE(inst.max_duration());
  EXPECT_EQ(inst.service_time(1), 0.0);
  EXPECT_DOUBLE_EQ(inst.cost(0, 1), 5.0);
}

TEST(ParseInstance, OptionalHeadersAndComments) {
  const auto inst = parse_instance(R"(# comment
NAME: d
CAPACITY: 20
MAX_DURATION: 100
SERVICE_TIME: 4

DEPOT: 1 1
CUSTOMERS:
2 5 5 3
1 2 2 4
)");
  EXPECT_EQ(inst.max_duration(), 100.0);
  EXPECT_EQ(inst.service_time(1), 4.0);
  EXPECT_EQ(inst.service_time(0), 0.0);
  EXPECT_EQ(inst.customer(1).x, 2.0);
  EXPECT_EQ(inst.customer(2).demand, 3.0);
}

TEST(ParseInstance, CmtP01Golden) {
  const auto inst = load_instance(std::string(BEESVRP_REPO_DATA) + "/cmt/P01E51K05.txt");
  EXPECT_EQ(inst.name(), "P01E51K05");
  EXPECT_EQ(inst.customer_count(), 50);
  EXPECT_EQ(inst.capacity(), 160.0);
  EXPECT_FALSE(inst.max_duration());
  EXPECT_EQ(inst.total_demand(), 777.0);
}

TEST(ParseInstance, DemandAboveCapacityNamesTheCustomerLine) {
  const std::string text = "NAME: x\nCAPACITY: 10\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 5\n2 2 2 11\n";
  EXPECT_EQ(error_line(text), 6u);
  EXPECT_EQ(error_field(text), "demand");
}

TEST(ParseInstance, DuplicateIdRejected) {
  const std::string text = "NAME: x\nCAPACITY: 10\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 5\n1 2 2 1\n";
  EXPECT_EQ(error_line(text), 6u);
  EXPECT_EQ(error_field(text), "id");
}

TEST(ParseInstance, NegativeDemandRejected) {
  const std::string text = "NAME: x\nCAPACITY: 10\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 -2\n";
  EXPECT_EQ(error_line(text), 5u);
  EXPECT_EQ(error_field(text), "demand");
}

TEST(ParseInstance, MalformedHeaderRejected) {
  EXPECT_EQ(error_line("NAME: x\nCAPACITY 10\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 1\n"), 2u);
  EXPECT_EQ(error_field("NAME: x\nCAPACITY: ten\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 1\n"), "CAPACITY");
  EXPECT_EQ(error_line("NAME: x\nCOLOUR: red\nCAPACITY: 1\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 1\n"), 2u);
  EXPECT_THROW(parse_instance("NAME: x\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 1\n"), ParseError);
  EXPECT_THROW(parse_instance("NAME: x\nCAPACITY: 5\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 1\n3 1 1 1\n"), ParseError);
}

TEST(Distance, EuclideanAndManhattan) {
  EXPECT_DOUBLE_EQ(distance({0, 0}, {3, 4}, Metric::euclidean), 5.0);
  EXPECT_DOUBLE_EQ(distance({0, 0}, {3, 4}, Metric::manhattan), 7.0);
  EXPECT_DOUBLE_EQ(distance({3, 4}, {0, 0}, Metric::manhattan), 7.0);
  EXPECT_EQ(distance({2, 2}, {2, 2}, Metric::euclidean), 0.0);
  EXPECT_EQ(distance({2, 2}, {2, 2}, Metric::manhattan), 0.0);
}

TEST(Distance, MetricSelectedAtParse) {
  const auto inst = parse_instance(minimal, Metric::manhattan);
  EXPECT_EQ(inst.metric(), Metric::manhattan);
  EXPECT_DOUBLE_EQ(inst.cost(0, 1), 7.0);
}

TEST(CandidateLists, CollinearOrder) {
  const auto inst = parse_instance("NAME: c\nCAPACITY: 5\nDEPOT: 0 5\nCUSTOMERS:\n1 0 0 1\n2 1 0 1\n3 3 0 1\n");
  const auto l = inst.neighbours(1);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], 2);
  EXPECT_EQ(l[1], 3);
}

TEST(CandidateLists, TiesByLowerId) {
  const auto inst = parse_instance("NAME: t\nCAPACITY: 5\nDEPOT: 9 9\nCUSTOMERS:\n1 2 0 1\n2 0 0 1\n3 -2 0 1\n");
  const auto l = inst.neighbours(2);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], 1);
  EXPECT_EQ(l[1], 3);
}

TEST(CandidateLists, PermutationSortedByDistance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::random_instance({7, testing::Tightness::loose, false}, seed);
    for (int v = 1; v <= inst.customer_count(); ++v) {
      const auto l = inst.neighbours(v);
      ASSERT_EQ(l.size(), static_cast<std::size_t>(inst.customer_count() - 1));
      std::set<int> unique(l.begin(), l.end());
      EXPECT_EQ(unique.size(), l.size());
      EXPECT_FALSE(unique.contains(v));
      EXPECT_FALSE(unique.contains(0));
      for (std::size_t k = 1; k < l.size(); ++k) EXPECT_LE(inst.cost(v, l[k - 1]), inst.cost(v, l[k]));
    }
  }
}

TEST(DistanceMatrix, SymmetricZeroDiagonalTriangle) {
  const auto inst = testing::random_instance({7, testing::Tightness::loose, false}, 5);
  const int n = inst.customer_count();
  for (int a = 0; a <= n; ++a) {
    EXPECT_EQ(inst.cost(a, a), 0.0);
    for (int b = 0; b <= n; ++b) {
      EXPECT_EQ(inst.cost(a, b), inst.cost(b, a));
      EXPECT_DOUBLE_EQ(inst.cost(a, b), testing::oracle_distance(inst, a, b));
      for (int c = 0; c <= n; ++c) EXPECT_LE(inst.cost(a, c), inst.cost(a, b) + inst.cost(b, c) + 1e-9);
    }
  }
}

TEST(Serialize, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::random_instance({6, testing::Tightness::tight, seed % 2 == 0}, seed, "rt");
    expect_same(inst, parse_instance(serialize_instance(inst)));
  }
  const auto uniform = parse_instance("NAME: u\nCAPACITY: 9\nSERVICE_TIME: 2.5\nDEPOT: 0.1 0.2\nCUSTOMERS:\n1 1.5 2 3\n");
  expect_same(uniform, parse_instance(serialize_instance(uniform)));
}

TEST(ConvertCmt, CapacityOnly) {
  const auto inst = parse_instance(convert_cmt("2 50 0 0\n10 10\n11 12 5\n20 20 7\n", "toy"));
  EXPECT_EQ(inst.name(), "toy");
  EXPECT_EQ(inst.customer_count(), 2);
  EXPECT_EQ(inst.capacity(), 50.0);
  EXPECT_FALSE(inst.max_duration());
  EXPECT_EQ(inst.customer(2).demand, 7.0);
  EXPECT_EQ(inst.depot().x, 10.0);
}

TEST(ConvertCmt, DurationAndServiceTime) {
  const auto inst = parse_instance(convert_cmt("1 50 200 10\n0 0\n3 4 5\n", "dur"));
  EXPECT_EQ(inst.max_duration(), 200.0);
  EXPECT_EQ(inst.service_time(1), 10.0);
}

TEST(ConvertCmt, TruncatedFileRejected) {
  EXPECT_THROW(convert_cmt("3 50 0 0\n0 0\n1 1 1\n", "bad"), ParseError);
}

TEST(Instance, ConstructorChecksInvariants) {
  EXPECT_THROW(Instance("x", {0, 0}, {}, 10, std::nullopt), std::invalid_argument);
  EXPECT_THROW(Instance("x", {0, 0}, {{1, 1, 1, 11, 0}}, 10, std::nullopt), std::invalid_argument);
  EXPECT_THROW(Instance("x", {0, 0}, {{1, 1, 1, 1, 0}}, 0, std::nullopt), std::invalid_argument);
  EXPECT_THROW(Instance("x", {0, 0}, {{1, 1, 1, 1, 0}}, 5, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace beesvrp
