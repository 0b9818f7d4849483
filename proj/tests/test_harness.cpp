#include <cstdlib>
#include <set>
#include <stdexcept>

#include "doctest.h"

#include "delayed_spt/harness.hpp"

using namespace dspt;

TEST_CASE("portable generator") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  Rng c(1);
  for (int i = 0; i < 200; ++i) {
    const int k = c.integer(2, 5);
    CHECK(k >= 2);
    CHECK(k <= 5);
  }
  CHECK(derive_seed(7, 0) != derive_seed(7, 1));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("random instances follow the sweep protocol") {
  std::set<std::size_t> sizes;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(derive_seed(3, i));
    const Instance inst = random_instance(rng, 2, 7);
    sizes.insert(inst.size());
    CHECK(inst.jobs().front().r == 0.0);
    for (const Job& j : inst.jobs()) {
      CHECK(j.p >= 0.1);
      CHECK(j.p <= 2.0);
      CHECK(j.r <= 2.0);
    }
  }
  CHECK(sizes.size() == 7);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 5) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("thread cap from the environment") {
  setenv("DELAYED_SPT_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("DELAYED_SPT_THREADS", "junk", 1);
  CHECK(worker_count() >= 1);
  unsetenv("DELAYED_SPT_THREADS");
}

TEST_CASE("table formatting") {
  const Table t{"demo", {{2, {{"R_m", 1.546104}}}, {3, {{"R_m", 1.4596}, {"x", 0.5}}}}};
  CHECK(table_csv(t) == "m,R_m,x\n2,1.54610\n3,1.45960,0.50000\n");
  const std::string j = table_json(t);
  CHECK(j.find("\"table\": \"demo\"") != std::string::npos);

  const Table t4 = second_generation_table(false);
  REQUIRE(t4.rows.size() == 8);
  CHECK(table_csv(t4).rfind("m,first_job,last_job,delta_max\n3,4,4,0.1", 0) == 0);
}
