#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "polyalab/symfunc.hpp"

using namespace polyalab;

TEST_CASE("h and e examples") {
  CHECK(h_eval(std::vector<Exact>{5, 7}, 0) == 1);
  CHECK(h_eval(std::vector<Exact>{1, 2}, 2) == 7);
  CHECK(h_eval(std::vector<Exact>{1, 1}, 3) == 4);
  CHECK(e_eval(std::vector<Exact>{1, 2, 3}, 1) == 6);
  CHECK(e_eval(std::vector<Exact>{1, 2}, 2) == 2);
  CHECK(e_eval(std::vector<Exact>{1, 2, 3}, 4) == 0);
}

TEST_CASE("h and e agree with monomial and subset enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.1, 3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> args(1 + t % 5);
    for (double& a : args) a = u(rng);
    std::vector<Float> fa(args.begin(), args.end());
    for (unsigned p = 0; p <= 5; ++p) {
      const double h = oracle::h_by_monomials(args, p);
      REQUIRE(std::fabs(h_eval(fa, p).convert_to<double>() - h) <= 1e-12 * h);
      if (p <= args.size()) {
        const double e = oracle::e_by_subsets(args, p);
        REQUIRE(std::fabs(e_eval(fa, p).convert_to<double>() - e) <= 1e-12 * e);
      }
    }
  }
}

TEST_CASE("h_to_e examples") {
  SymPolyTable<Exact> h{{1, 3, 7}};
  CHECK(h_to_e(h, 2).values == std::vector<Exact>{1, 3, 2});
  SymPolyTable<Exact> h1{{1, Exact(5, 3)}};
  CHECK(h_to_e(h1, 1).values == std::vector<Exact>{1, Exact(5, 3)});
  SymPolyTable<Exact> h3{{1, 3, 6, 10}};
  CHECK(h_to_e(h3, 3).values == std::vector<Exact>{1, 3, 3, 1});
  CHECK_THROWS_AS(h_to_e(h, 3), Error);
}

TEST_CASE("symmetry under permutations") {
  std::vector<Exact> args{Exact(1, 2), 3, Exact(7, 5), 2};
  const auto h = h_table(args, 6);
  const auto e = e_table(args);
  std::sort(args.begin(), args.end());
  do {
    REQUIRE(h_table(args, 6) == h);
    REQUIRE(e_table(args) == e);
  } while (std::next_permutation(args.begin(), args.end()));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 5);
  std::vector<Float> fa;
  for (int i = 0; i < 5; ++i) fa.emplace_back(u(rng));
  const auto hf = h_table(fa, 8);
  for (int t = 0; t < 20; ++t) {
    std::shuffle(fa.begin(), fa.end(), rng);
    const auto hp = h_table(fa, 8);
    for (unsigned p = 0; p <= 8; ++p) REQUIRE(abs(hp[p] - hf[p]) <= Float("1e-12") * hf[p]);
  }
}

TEST_CASE("Newton-type identity sum (-1)^k e_k h_{p-k} = 0") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> num(1, 30), den(1, 7);
  for (int t = 0; t < 30; ++t) {
    std::vector<Exact> args(1 + t % 6);
    for (Exact& a : args) a = Exact(num(rng), den(rng));
    const auto h = h_table(args, 10);
    auto e = e_table(args);
    e.resize(11, Exact(0));
    for (unsigned p = 1; p <= 10; ++p) {
      Exact s = 0;
      for (unsigned k = 0; k <= p; ++k) s += (k % 2 ? -1 : 1) * e[k] * h[p - k];
      REQUIRE(s == 0);
    }
  }
}

TEST_CASE("h_to_e reproduces the coefficients of prod (z - a_j)") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(1, 20), den(1, 5);
  for (int t = 0; t < 30; ++t) {
    const unsigned m = 1 + t % 5;
    std::vector<Exact> args(m);
    for (Exact& a : args) a = Exact(num(rng), den(rng));
    SymPolyTable<Exact> h{h_table(args, m)};
    const auto e = h_to_e(h, m).values;
    const auto coeffs = monic_from_roots(args);
    for (unsigned k = 0; k <= m; ++k) REQUIRE(coeffs[k] == (k % 2 ? -1 : 1) * e[k]);

    std::vector<Float> fargs;
    for (const Exact& a : args) fargs.emplace_back(a);
    SymPolyTable<Float> hf{h_table(fargs, m)};
    const auto ef = h_to_e(hf, m).values;
    for (unsigned k = 0; k <= m; ++k)
      REQUIRE(abs(ef[k] - Float(e[k])) <= Float("1e-25") * (1 + abs(Float(e[k]))));
  }
}

TEST_CASE("generating function partial sums") {
  CHECK(abs(h_generating_partial_sum({Float(1)}, Float("0.5"), 30) - 2) < Float("1e-8"));
  CHECK(h_generating_partial_sum({Float(1), Float(2)}, Float(0), 10) == 1);
  CHECK(abs(h_generating_partial_sum({Float(1), Float(2)}, Float("0.25"), 60) - Float(8) / 3) <
        Float("1e-10"));
  CHECK_THROWS_AS(h_generating_partial_sum({Float(1), Float(2)}, Float("0.5"), 10), Error);
  // the truncation error shrinks geometrically with ratio max |a z|
  const std::vector<Float> a{Float("0.5"), Float(1), Float("1.5")};
  const Float z("0.4"), limit = 1 / ((1 - a[0] * z) * (1 - a[1] * z) * (1 - a[2] * z));
  for (unsigned n = 10; n <= 60; n += 10) {
    const Float err = abs(limit - h_generating_partial_sum(a, z, n));
    CHECK(err <= 100 * pow(Float("0.6"), n + 1));
  }
}

TEST_CASE("ParamVector") {
  ParamVector p = ParamVector::from_doubles({2, 0.5});
  CHECK(p.size() == 2);
  CHECK(p.rates()[0] == Float("0.5"));
  CHECK(p.rates()[1] == 2);
  CHECK(p.alpha_product() == 1);
  CHECK(p.rate_product() == 1);
  CHECK(p.distinct());
  CHECK_FALSE(ParamVector::from_doubles({1, 1}).distinct());
  CHECK_THROWS_AS(ParamVector::from_doubles({1, -1}), Error);
  CHECK_THROWS_AS(ParamVector::from_doubles({0}), Error);
  CHECK_THROWS_AS(ParamVector(std::vector<Float>{}), Error);
  CHECK(ParamVector::from_rates({Float(4)}).alpha()[0] == Float("0.25"));
}
