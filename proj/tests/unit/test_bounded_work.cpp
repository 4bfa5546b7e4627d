#include <cbw/bounded_work.hpp>
#include <cbw/oracle.hpp>

#include <doctest.h>
#include <reference.hpp>

#include <cmath>
#include <numeric>
#include <random>

using namespace cbw;
using doctest::Approx;

namespace {

const ThermalContext kOne(1.0);
const HamiltonianSpec kTritH({0.1, 0.2, 0.0});
const DiagonalState kTrit({0.7, 0.2, 0.1}, kTritH);

void check_extraction_invariants(const DiagonalState& rho, const HamiltonianSpec& hf,
                                 const ThermalContext& ctx, double c) {
  const auto r = c_bounded_work(rho, hf, ctx, c);
  const auto& d = r.distribution;
  CHECK(d.total_probability() == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(d.weighted_fluctuation()) <= 1e-10);
  CHECK(d.max_abs_fluctuation() <= c + 1e-9);
  double sat = 0.0;
  for (const auto& e : d.entries) sat += std::exp(ctx.beta() * (e.work - rho.energy(e.level)));
  CHECK(std::abs(sat - partition_function(hf, ctx)) <= 1e-10 * partition_function(hf, ctx));
  CHECK(r.value == d.mean);
}

}  // namespace

TEST_CASE("extraction partition examples") {
  const auto g = extraction_partition(DiagonalState::gibbs(kTritH, kOne), kTritH, kOne, 0.3);
  CHECK_FALSE(g.has_bounded());
  CHECK(g.unbounded.size() == 3);

  // Trit at c = 0.3: the two light levels sit at -c (water-filling reference).
  const auto p = extraction_partition(kTrit, kTritH, kOne, 0.3);
  CHECK(p.plus.empty());
  CHECK(p.unbounded == std::vector<std::size_t>{0});
  CHECK(p.minus == std::vector<std::size_t>{1, 2});
  CHECK(p.x_minus == Approx(0.3));
  CHECK(p.gamma > 0.0);
  const auto o = oracle_extraction(kTrit, kTritH, kOne, 0.3);
  CHECK(o.active_set[0] == ActiveTag::Interior);
  CHECK(o.active_set[1] == ActiveTag::LowerClipped);
  CHECK(o.active_set[2] == ActiveTag::LowerClipped);

  // Qubit with x > 1/2: only the light level can be bounded, and it is exactly
  // when its unbounded value falls below W_inf - c.
  const HamiltonianSpec h({0.1, 0.0});
  for (double x : {0.55, 0.7, 0.9}) {
    const DiagonalState q({x, 1.0 - x}, h);
    const auto u = unbounded_work(q, h, kOne);
    const double gap = u.mean - u.distribution.entries[1].work;
    for (double c : {0.01, 0.1, 0.5, 1.0}) {
      const auto qp = extraction_partition(q, h, kOne, c);
      CHECK(qp.plus.empty());
      CHECK((qp.minus == std::vector<std::size_t>{1}) == (gap > c));
    }
  }
}

TEST_CASE("c-bounded work values") {
  CHECK(c_bounded_work(kTrit, kTritH, kOne, 0.3).value ==
        Approx(0.13638456281528266).epsilon(1e-13));

  const HamiltonianSpec h({0.1, 0.0});
  const DiagonalState q({0.9, 0.1}, h);
  const auto r = c_bounded_work(q, h, kOne, 0.05);
  CHECK(r.value == Approx(0.0232248084750305).epsilon(1e-13));
  CHECK(std::abs(r.value - oracle_extraction(q, h, kOne, 0.05).mean) <= 1e-6);
  CHECK(r.regime == Regime::PartiallyBounded);

  CHECK(c_bounded_work(kTrit, kTritH, kOne, 10.0).value ==
        Approx(unbounded_work(kTrit, kTritH, kOne).mean).epsilon(1e-14));
  CHECK(c_bounded_work(kTrit, kTritH, kOne, 10.0).regime == Regime::AllUnbounded);
  CHECK(c_bounded_work(kTrit, kTritH, kOne, 0.0).value ==
        deterministic_work(kTrit, kTritH, kOne));
  CHECK(c_bounded_work(kTrit, kTritH, kOne, 0.0).regime == Regime::FullyClipped);
  CHECK_THROWS_AS(c_bounded_work(kTrit, kTritH, kOne, -0.1), DomainError);
  CHECK_THROWS_AS(c_bounded_work(kTrit, kTritH, kOne, NAN), DomainError);

  // Degenerate half-half qubit: the positive side takes the bound.
  const DiagonalState half({0.5, 0.5}, {0.0, 1.0});
  const auto hp = extraction_partition(half, half.hamiltonian(), kOne, 0.1);
  CHECK(hp.plus == std::vector<std::size_t>{1});
  CHECK(c_bounded_work(half, half.hamiltonian(), kOne, 0.1).value ==
        Approx(ref::water_fill(half, {0.0, 1.0}, 1.0, 0.1).value).epsilon(1e-13));
}

TEST_CASE("c-bounded work against water-filling reference") {
  std::mt19937_64 rng(2024);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto inst = random_instance(seed, 6, {0.1, 10.0}, {0.0, 3.0});
    const double c = seed % 3 == 0 ? inst.c * 0.05 : inst.c;
    const auto& h = inst.hamiltonian();
    const auto r = c_bounded_work(inst.state, h, inst.ctx, c);
    const auto w = ref::water_fill(inst.state, {h.energies().begin(), h.energies().end()},
                                   inst.ctx.beta(), c);
    INFO("seed " << seed);
    CHECK(std::abs(r.value - w.value) <= 1e-10 * (1.0 + std::abs(w.value)));
    std::size_t k = 0;
    for (const auto& e : r.distribution.entries) {
      if (c > 0.0) CHECK(std::abs((e.work - r.value) - w.theta[k]) <= 1e-9);
      ++k;
    }
    check_extraction_invariants(inst.state, h, inst.ctx, c);
  }
}

TEST_CASE("extraction partition structure") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto inst = random_instance(seed, 6, {0.1, 10.0}, {0.0, 3.0});
    const auto p = extraction_partition(inst.state, inst.hamiltonian(), inst.ctx, inst.c);
    CHECK(p.x_plus < 0.5);
    CHECK(p.x_minus < 0.5);
    CHECK(p.x_u + p.x_plus + p.x_minus == Approx(1.0).epsilon(1e-12));
    // Contiguity in beta-order: plus, unbounded, minus.
    std::vector<std::size_t> joined = p.plus;
    joined.insert(joined.end(), p.unbounded.begin(), p.unbounded.end());
    joined.insert(joined.end(), p.minus.begin(), p.minus.end());
    CHECK(joined == p.order.permutation);
    CHECK(p.gamma > 0.0);
  }
}

TEST_CASE("qubit closed form agrees with the general algorithm") {
  for (double x1 : {0.5, 0.55, 0.7, 0.9, 0.99, 1.0})
    for (double gap : {-1.5, -0.3, 0.0, 0.1, 0.8, 2.0})
      for (double c : {0.0, 0.01, 0.1, 0.4, 1.0, 5.0})
        for (double beta : {0.3, 1.0, 4.0}) {
          const ThermalContext ctx(beta);
          const HamiltonianSpec h({gap, 0.0});
          const DiagonalState q({x1, 1.0 - x1}, h);
          const double zf = partition_function(h, ctx);
          INFO("x1=" << x1 << " gap=" << gap << " c=" << c << " beta=" << beta);
          CHECK(qubit_work_closed_form(x1, gap, zf, ctx, c) ==
                Approx(c_bounded_work(q, h, ctx, c).value).epsilon(1e-10));
        }

  // Middle branch and the flat half-half qubit.
  const DiagonalState q({0.6, 0.4}, {0.1, 0.0});
  const double zf = partition_function(q.hamiltonian(), kOne);
  CHECK(qubit_work_closed_form(0.6, 0.1, zf, kOne, 2.0) ==
        Approx(std::log(zf) + free_energy(q, kOne)));
  for (double c : {0.0, 0.3, 3.0})
    CHECK(qubit_work_closed_form(0.5, 0.0, 2.0, kOne, c) == Approx(std::log(2.0) - std::log(2.0)));
  CHECK_THROWS_AS(qubit_work_closed_form(0.4, 0.1, zf, kOne, 0.1), DomainError);
}

TEST_CASE("formation partition and cost") {
  const auto gibbs = DiagonalState::gibbs(kTritH, kOne);
  for (double c : {0.0, 0.2, 1.0, 5.0}) {
    const auto r = c_bounded_formation(gibbs, kTritH, kOne, c);
    CHECK(std::abs(r.value) < 1e-12);
    if (c > 0.0) CHECK_FALSE(r.partition.has_bounded());
  }

  // c = 0 leaves only the top level unbounded.
  const auto p0 = formation_partition(kTrit, kTritH, kOne, 0.0);
  CHECK(p0.unbounded == std::vector<std::size_t>{0});
  CHECK(p0.plus == std::vector<std::size_t>{1, 2});
  CHECK(c_bounded_formation(kTrit, kTritH, kOne, 0.0).value ==
        deterministic_formation_cost(kTrit, kTritH, kOne));

  // Trit at c = 0.5 (linear-programming reference).
  const auto r = c_bounded_formation(kTrit, kTritH, kOne, 0.5);
  CHECK(r.value == Approx(0.5309821900047242).epsilon(1e-9));
  CHECK(r.partition.unbounded == std::vector<std::size_t>{0});
  CHECK(r.partition.plus == std::vector<std::size_t>{1, 2});
  const auto o = oracle_formation(kTrit, kTritH, kOne, 0.5);
  CHECK(o.active_set[0] == ActiveTag::Interior);
  CHECK(o.active_set[1] == ActiveTag::UpperClipped);
  CHECK(o.active_set[2] == ActiveTag::UpperClipped);

  // Qubit in the clipped regime: cost = log(x e^{E} Z) - c(1 - x)/x.
  const HamiltonianSpec h({0.1, 0.0});
  const DiagonalState q({0.8, 0.2}, h);
  const double z = partition_function(h, kOne);
  CHECK(c_bounded_formation(q, h, kOne, 0.1).value ==
        Approx(std::log(0.8 * std::exp(0.1) * z) - 0.1 * 0.2 / 0.8).epsilon(1e-13));
  CHECK(c_bounded_formation(q, h, kOne, 0.1).value == Approx(0.4962531087593785).epsilon(1e-9));

  CHECK(c_bounded_formation(kTrit, kTritH, kOne, 10.0).value ==
        Approx(unbounded_formation_cost(kTrit, kTritH, kOne)).epsilon(1e-13));
  CHECK_THROWS_AS(c_bounded_formation(kTrit, kTritH, kOne, -1.0), DomainError);
}

TEST_CASE("formation with the lower bound active") {
  // Flat trit: pushing the mean up to the cut formula would drive the heaviest
  // level below -c, so the mean stops at a_0 + c.
  const DiagonalState t({0.4, 0.3, 0.3}, {0.0, 0.0, 0.0});
  const auto& h = t.hamiltonian();
  const auto r = c_bounded_formation(t, h, kOne, 0.1);
  CHECK(r.value == Approx(std::log(1.2) - 0.1).epsilon(1e-13));
  CHECK(r.value == Approx(-oracle_formation(t, h, kOne, 0.1).mean).epsilon(1e-12));
  CHECK(r.partition.minus == std::vector<std::size_t>{0});
  CHECK(r.distribution.max_abs_fluctuation() <= 0.1 + 1e-12);
  CHECK(std::abs(r.distribution.weighted_fluctuation()) < 1e-12);
  CHECK(r.distribution.fluctuation(0) == Approx(-0.1));
}

TEST_CASE("formation against the oracle and its invariants") {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto inst = random_instance(seed, 6, {0.1, 10.0}, {0.0, 3.0});
    const double c = seed % 3 == 0 ? inst.c * 0.05 : inst.c;
    const auto& h = inst.hamiltonian();
    const auto r = c_bounded_formation(inst.state, h, inst.ctx, c);
    INFO("seed " << seed);
    CHECK(std::abs(r.value + oracle_formation(inst.state, h, inst.ctx, c).mean) <= 1e-9);

    const auto& d = r.distribution;
    CHECK(d.max_abs_fluctuation() <= c + 1e-9);
    CHECK(std::abs(d.weighted_fluctuation()) <= 1e-10);
    const double log_z = log_partition_function(h, inst.ctx);
    for (const auto& e : d.entries) {
      const double ratio = std::log(e.prob) + inst.ctx.beta() * (e.work + h[e.level]) + log_z;
      const auto& u = r.partition.unbounded;
      if (std::find(u.begin(), u.end(), e.level) != u.end() ||
          std::find(r.partition.minus.begin(), r.partition.minus.end(), e.level) !=
              r.partition.minus.end())
        CHECK(std::abs(ratio) <= 1e-10);
      else if (c > 0.0)
        CHECK(ratio < 0.0);
    }
  }
}

TEST_CASE("monotonicity, trade-off and sandwich") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_instance(seed, 5, {0.1, 10.0}, {0.0, 5.0});
    const auto& h = inst.hamiltonian();
    const auto& ctx = inst.ctx;
    const double w0 = deterministic_work(inst.state, h, ctx);
    const double winf = unbounded_work(inst.state, h, ctx).mean;
    const double f0 = deterministic_formation_cost(inst.state, h, ctx);
    const double finf = unbounded_formation_cost(inst.state, h, ctx);
    double prev_w = -INFINITY, prev_f = INFINITY;
    for (int k = 0; k < 100; ++k) {
      const double c = 0.04 * k;
      const double w = c_bounded_work(inst.state, h, ctx, c).value;
      const double f = c_bounded_formation(inst.state, h, ctx, c).value;
      INFO("seed " << seed << " c " << c);
      CHECK(w >= prev_w - 1e-12);
      CHECK(f <= prev_f + 1e-12);
      CHECK(w <= w0 + c + 1e-10);
      CHECK(f >= f0 - c - 1e-10);
      CHECK(w >= w0 - 1e-12);
      CHECK(w <= winf + 1e-12);
      CHECK(f <= f0 + 1e-12);
      CHECK(f >= finf - 1e-12);
      prev_w = w;
      prev_f = f;
    }
  }
}

TEST_CASE("permutation invariance") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = random_instance(seed, 6, {0.1, 10.0}, {0.0, 3.0});
    std::vector<std::size_t> perm(inst.state.dim());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto moved = inst.state.permuted(perm);
    const auto& h2 = moved.hamiltonian();
    const auto a = c_bounded_work(inst.state, inst.hamiltonian(), inst.ctx, inst.c);
    const auto b = c_bounded_work(moved, h2, inst.ctx, inst.c);
    CHECK(b.value == Approx(a.value).epsilon(1e-12));
    auto relabel = [&](std::vector<std::size_t> v) {
      for (auto& s : v) s = perm[s];
      std::sort(v.begin(), v.end());
      return v;
    };
    auto sorted = [](std::vector<std::size_t> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    CHECK(relabel(b.partition.plus) == sorted(a.partition.plus));
    CHECK(relabel(b.partition.minus) == sorted(a.partition.minus));
    const auto fa = c_bounded_formation(inst.state, inst.hamiltonian(), inst.ctx, inst.c);
    const auto fb = c_bounded_formation(moved, h2, inst.ctx, inst.c);
    CHECK(fb.value == Approx(fa.value).epsilon(1e-12));
  }
}

TEST_CASE("work curve") {
  const std::vector<double> zero{0.0};
  const auto c0 = work_curve(kTrit, kTritH, kOne, zero);
  REQUIRE(c0.size() == 1);
  CHECK(c0[0].work == deterministic_work(kTrit, kTritH, kOne));
  CHECK(c0[0].formation == deterministic_formation_cost(kTrit, kTritH, kOne));

  const std::vector<double> big{5.0, 10.0};
  for (const auto& p : work_curve(kTrit, kTritH, kOne, big)) {
    CHECK(p.work == Approx(unbounded_work(kTrit, kTritH, kOne).mean).epsilon(1e-13));
    CHECK(p.formation == Approx(unbounded_formation_cost(kTrit, kTritH, kOne)).epsilon(1e-13));
  }

  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.025 * i);
  const auto curve = work_curve(kTrit, kTritH, kOne, grid);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].work >= curve[i - 1].work - 1e-14);
    CHECK(curve[i].formation <= curve[i - 1].formation + 1e-14);
  }

  const std::vector<double> descending{0.5, 0.1};
  CHECK_THROWS_AS(work_curve(kTrit, kTritH, kOne, descending), InputError);
  const std::vector<double> negative{-0.5, 0.1};
  CHECK_THROWS_AS(work_curve(kTrit, kTritH, kOne, negative), DomainError);
}
