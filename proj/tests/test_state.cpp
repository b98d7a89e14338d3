#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "szegolab/kernels.hpp"
#include "szegolab/state.hpp"
#include "test_support.hpp"

using namespace szegolab;

TEST_CASE("sobolev norm pinned values") {
  ModeState one{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  for (double s : {0.0, 0.5, 1.0, 3.7}) CHECK(sobolev_norm(one, s) == 1.0);

  ModeState second{Complex{0, 0}, Complex{1, 0}, Complex{0, 0}};
  CHECK(sobolev_norm(second, 1.0) == doctest::Approx(2.0).epsilon(1e-15));

  ModeState geo(40);
  for (int n = 0; n < 40; ++n) geo[n] = std::pow(0.5, n);
  // geometric oracle: sum 4^-n = 4/3
  CHECK(sobolev_norm(geo, 0.0) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));
  CHECK(sobolev_norm(geo, 0.0) == doctest::Approx(std::sqrt(particle_number(geo))).epsilon(1e-15));
}

TEST_CASE("sobolev norm is nondecreasing in s") {
  std::mt19937_64 rng(7);
  const ModeState s = test::random_state(rng, 32);
  double prev = 0;
  for (double sv : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    const double cur = sobolev_norm(s, sv);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("charges pinned values") {
  KernelSpec tr;
  tr.family = KernelFamily::Truncated;
  ModeState s{Complex{1, 0}, Complex{1, 0}, Complex{0, 0}};
  const std::vector<double> slist{1.0};
  const ChargeSet cs = charges(tr, s, slist);
  CHECK(cs.N == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cs.E == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cs.H == doctest::Approx(1.25).epsilon(1e-14));
  // rewritten form |a0|^4/4 + |a0|^2 sum_{n>=1} |a_n|^2 for this state
  CHECK(cs.H == doctest::Approx(0.25 + 1.0).epsilon(1e-14));

  KernelSpec sz;
  ModeState single{Complex{1, 0}, Complex{0, 0}};
  CHECK(charges(sz, single, slist).H == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(charges(sz, single, slist).E == 0.0);
  CHECK(charges(sz, single, slist).N == 1.0);

  ModeState zero(8);
  const ChargeSet zc = charges(sz, zero, slist);
  CHECK(zc.N == 0.0);
  CHECK(zc.E == 0.0);
  CHECK(zc.H == 0.0);
  CHECK(zc.wiener == 0.0);
}

TEST_CASE("hamiltonian convolution path equals the resonant sum") {
  std::mt19937_64 rng(11);
  std::vector<KernelSpec> specs(8);
  specs[0].family = KernelFamily::Szego;
  specs[1].family = KernelFamily::Truncated;
  specs[2].family = KernelFamily::Beta;
  specs[2].beta = 0.4;
  specs[3].family = KernelFamily::ModeAnchored;
  specs[3].beta = 2.0;
  specs[3].anchor = 2;
  specs[4].family = KernelFamily::PowerProduct;
  specs[4].G = 0.5;
  specs[4].truncated = true;
  specs[5].family = KernelFamily::PowerSum;
  specs[5].G = 1.0;
  specs[6].family = KernelFamily::Extended;
  specs[6].beta = 0.3;
  specs[6].gamma = 3.0;
  specs[6].alpha = 0.7;
  specs[7].family = KernelFamily::PowerSum;
  specs[7].G = 1.5;
  specs[7].truncated = true;

  for (const KernelSpec& spec : specs) {
    for (int trial = 0; trial < 5; ++trial) {
      const ModeState s = test::random_state(rng, 24);
      const double fast = hamiltonian(spec, s);
      const double exact = hamiltonian_direct(spec, s);
      CHECK(fast == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("truncated Hamiltonian bound H >= -N E") {
  KernelSpec tr;
  tr.family = KernelFamily::Truncated;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const ModeState s = test::random_state(rng, 48, 0.1 + 0.2 * (trial % 5));
    const double H = hamiltonian(tr, s);
    const double bound = -particle_number(s) * energy(s);
    CHECK(H >= bound - 1e-12 * std::abs(bound));
  }
}

TEST_CASE("position profile basics and Parseval") {
  ModeState one{Complex{1, 0}, Complex{0, 0}};
  const PositionProfile p1 = position_profile(one, 16);
  for (const Complex& u : p1.u) CHECK(std::abs(u - Complex{1, 0}) < 1e-14);
  for (const Complex& v : p1.v) CHECK(std::abs(v) < 1e-14);

  ModeState second{Complex{0, 0}, Complex{1, 0}};
  const PositionProfile p2 = position_profile(second, 16);
  for (const Complex& v : p2.v) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(23);
  const ModeState s = test::random_state(rng, 24);
  const PositionProfile prof = position_profile(s, 4 * 24);
  double mean = 0;
  for (const Complex& u : prof.u) mean += std::norm(u);
  mean /= static_cast<double>(prof.u.size());
  CHECK(mean == doctest::Approx(particle_number(s)).epsilon(1e-12));

  CHECK_THROWS_AS(position_profile(s, 1), std::invalid_argument);
}

TEST_CASE("restrict_residue") {
  ModeState s{Complex{1, 0}, Complex{1, 0}, Complex{1, 0}, Complex{1, 0}};
  SUBCASE("identity for (0,1)") {
    const ModeState r = restrict_residue(s, 0, 1);
    for (int n = 0; n < 4; ++n) CHECK(r[n] == s[n]);
  }
  SUBCASE("odd modes (1,2)") {
    const ModeState r = restrict_residue(s, 1, 2);
    CHECK(r[0] == Complex{});
    CHECK(r[1] == Complex{1, 0});
    CHECK(r[2] == Complex{});
    CHECK(r[3] == Complex{1, 0});
  }
  SUBCASE("(2,3) on five modes") {
    ModeState t{Complex{1, 0}, Complex{2, 0}, Complex{3, 0}, Complex{4, 0}, Complex{5, 0}};
    const ModeState r = restrict_residue(t, 2, 3);
    CHECK(r[0] == Complex{});
    CHECK(r[1] == Complex{});
    CHECK(r[2] == Complex{3, 0});
    CHECK(r[3] == Complex{});
    CHECK(r[4] == Complex{});
  }
  SUBCASE("rejects non-coprime or out-of-range") {
    CHECK_THROWS_AS(restrict_residue(s, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(restrict_residue(s, 3, 2), std::invalid_argument);
  }
}

TEST_CASE("tail mass covers the top decile") {
  ModeState s(20);
  for (int n = 0; n < 20; ++n) s[n] = 1.0;
  CHECK(tail_mass(s) == doctest::Approx(2.0).epsilon(1e-15));  // modes 18, 19
}

TEST_CASE("S reconstruction on L(1) data matches the closed form") {
  // direct check against charges(): S = (4H - N^2 - 2NE + (2+beta)E^2)/(2E)
  KernelSpec be;
  be.family = KernelFamily::Beta;
  be.beta = 0.5;
  ModeState s(64);
  const Complex b{0.8, 0.1}, a{-0.4, 0.3}, p{0.45, -0.2};
  s[0] = b;
  const Complex B = b * p + a;
  Complex pw{1, 0};
  for (int n = 1; n < 64; ++n) {
    s[n] = B * pw;
    pw *= p;
  }
  const std::vector<double> slist{1.0};
  const ChargeSet cs = charges(be, s, slist, 0.5);
  REQUIRE(cs.S.has_value());
  const double x = std::norm(p);
  const double E = std::norm(B) / ((1 - x) * (1 - x));
  const double N = std::norm(b) + (1 - x) * E;
  const double P = 2.0 * std::real(a * std::conj(b) * std::conj(p));
  const double S_expected = (N + E) * x + 0.5 * 0.5 * E * x * x + P;
  CHECK(*cs.S == doctest::Approx(S_expected).epsilon(1e-9));
  CHECK(cs.N == doctest::Approx(N).epsilon(1e-12));
  CHECK(cs.E == doctest::Approx(E).epsilon(1e-12));
}
