#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "kronsync/kron.hpp"
#include "kronsync/spectral.hpp"

using namespace kronsync;

TEST_CASE("eigenvalues sort by real part, with imaginary tie-break") {
  ComplexMatrix lap(2, 2);
  lap << Complex(1, 0), Complex(-1, 0), Complex(-1, 0), Complex(1, 0);
  auto eigs = eigenvalues_sorted(lap);
  REQUIRE(eigs.size() == 2);
  CHECK(std::abs(eigs[0]) <= 1e-14);
  CHECK(std::abs(eigs[1] - Complex(2, 0)) <= 1e-14);

  auto eigs_imag = eigenvalues_sorted(Complex(0, 1) * lap);
  CHECK(std::abs(eigs_imag[0]) <= 1e-14);
  CHECK(std::abs(eigs_imag[1] - Complex(0, 2)) <= 1e-14);
}

TEST_CASE("bridge spectrum matches the frozen oracle") {
  const auto eigs = eigenvalues_sorted(testing::bridge_gamma());
  REQUIRE(eigs.size() == 3);
  CHECK(std::abs(eigs[0]) <= 1e-9);
  CHECK(std::abs(eigs[1] - Complex(0.35505102572168235, 1.0651530771650461)) <=
        1e-9);
  CHECK(std::abs(eigs[2] - Complex(0.84494897427831628, 2.5348469228349528)) <=
        1e-9);
}

TEST_CASE("damper pair synchronizes with margin 2") {
  const ReducedCoupling rc = reduce(testing::pair_network(1.0, 0.0));
  const SpectralVerdict v = sync_verdict(rc.Gamma);
  CHECK(v.synchronizes);
  CHECK(v.margin == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(v.multiplicity_at_origin == 1);
  CHECK(imaginary_axis_count(v) == 1);
}

TEST_CASE("springs-only network never synchronizes") {
  const ReducedCoupling rc = reduce(testing::spring_chain_network());
  const SpectralVerdict v = sync_verdict(rc.Gamma);
  CHECK_FALSE(v.synchronizes);
  CHECK(std::abs(v.margin) <= v.zero_tol);
  CHECK(v.multiplicity_at_origin == 1);  // the deciding eigenvalue is 2j/3
  CHECK(imaginary_axis_count(v) == 2);   // every eigenvalue purely imaginary
  CHECK(std::abs(v.eigenvalues.at(1) - Complex(0, 2.0 / 3.0)) <= 1e-12);
}

TEST_CASE("disconnected boundary groups put multiplicity 2 at the origin") {
  const ReducedCoupling rc = reduce(testing::disconnected_network());
  const SpectralVerdict v = sync_verdict(rc.Gamma);
  CHECK_FALSE(v.synchronizes);
  CHECK(v.multiplicity_at_origin == 2);
  REQUIRE(v.eigenvalues.size() == 4);
  CHECK(std::abs(v.eigenvalues[0]) <= 1e-12);
  CHECK(std::abs(v.eigenvalues[1]) <= 1e-12);
  CHECK(std::abs(v.eigenvalues[2] - Complex(1.6, 0.0)) <= 1e-12);
  CHECK(std::abs(v.eigenvalues[3] - Complex(2.0, 1.0)) <= 1e-12);
}

TEST_CASE("single boundary node synchronizes trivially") {
  RawNetwork raw;
  raw.node_count = 2;
  raw.boundary = {"1"};
  raw.dampers = {{"1", "2", 1.0}};
  const ReducedCoupling rc = reduce(validate_network(raw));
  const SpectralVerdict v = sync_verdict(rc.Gamma);
  CHECK(v.synchronizes);
  CHECK(std::isinf(v.margin));
  CHECK(v.margin > 0.0);
}

TEST_CASE("margins inside the zero band do not count as synchronizing") {
  ComplexMatrix tiny(2, 2);
  const double eps = 1e-10;
  tiny << Complex(eps, 0), Complex(-eps, 0), Complex(-eps, 0), Complex(eps, 0);
  const SpectralVerdict v = sync_verdict(tiny);
  CHECK(v.zero_tol == 1e-8);  // max(1, |Gamma|_max) = 1
  CHECK(v.margin > 0.0);
  CHECK(v.margin <= v.zero_tol);
  CHECK_FALSE(v.synchronizes);
  CHECK(v.multiplicity_at_origin == 2);
}

TEST_CASE("explicit zero tolerance overrides the default") {
  const ReducedCoupling rc = reduce(testing::pair_network(1.0, 1.0));
  const SpectralVerdict strict = sync_verdict(rc.Gamma, 10.0);
  CHECK_FALSE(strict.synchronizes);  // margin 2 <= 10
  CHECK(strict.zero_tol == 10.0);
  const SpectralVerdict loose = sync_verdict(rc.Gamma, 1e-9);
  CHECK(loose.synchronizes);
}

TEST_CASE("default zero tolerance scales with the coupling magnitude") {
  const ReducedCoupling rc = reduce(testing::bridge_network());
  const SpectralVerdict v = sync_verdict(rc.Gamma);
  CHECK(v.zero_tol ==
        doctest::Approx(1e-8 * std::max(1.0, max_abs(rc.Gamma))));
}

TEST_CASE("verdict is invariant under scaling and permutation") {
  std::mt19937_64 rng(5150);
  const ComplexMatrix gamma = testing::bridge_gamma();
  const SpectralVerdict base = sync_verdict(gamma);
  for (double c : {1e-3, 0.5, 42.0, 1e5}) {
    const SpectralVerdict scaled = sync_verdict((c * gamma).eval());
    CHECK(scaled.synchronizes == base.synchronizes);
    CHECK(scaled.margin == doctest::Approx(c * base.margin).epsilon(1e-9));
  }
  // Permuting boundary nodes permutes nothing in the spectrum.
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(3);
  perm.setIdentity();
  std::shuffle(perm.indices().data(), perm.indices().data() + 3, rng);
  const ComplexMatrix shuffled =
      perm.transpose() * gamma * perm;
  const SpectralVerdict permuted = sync_verdict(shuffled);
  CHECK(permuted.synchronizes == base.synchronizes);
  CHECK(permuted.margin == doctest::Approx(base.margin).epsilon(1e-9));
}

TEST_CASE("no-interior networks: synchronizing means one axis eigenvalue") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> wdist(0.5, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Index p = 2 + static_cast<Index>(rng() % 5);
    RawNetwork raw;
    raw.node_count = p;
    for (Index i = 1; i <= p; ++i) raw.boundary.push_back(std::to_string(i));
    for (Index a = 1; a <= p; ++a)
      for (Index b = a + 1; b <= p; ++b) {
        if (unit(rng) < 0.4)
          raw.dampers.push_back(
              {std::to_string(a), std::to_string(b), wdist(rng)});
        if (unit(rng) < 0.4)
          raw.springs.push_back(
              {std::to_string(a), std::to_string(b), wdist(rng)});
      }
    const SpectralVerdict v =
        sync_verdict(reduce(validate_network(raw)).Gamma);
    CHECK((imaginary_axis_count(v) == 1) == v.synchronizes);
  }
}
