#include <doctest.h>

#include "oracles.hpp"

using namespace msglab;

namespace {

std::size_t rk_diff(const Matrix& a, const Matrix& b) { return rank(a - b); }

}  // namespace

TEST_CASE("near root: bounds and split condition on random inputs") {
  for (auto f : {Field::make(2), Field::make(3), Field::make(5), Field::make(2, 2), Field::make(3, 2)}) {
    Rng rng(f->q());
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + uniform_below(rng, 7);
      std::uint64_t k;
      do k = 1 + uniform_below(rng, 6);
      while (k % f->p() == 0);
      const auto nz = f->enumerate_nonzero();
      const Elem alpha = nz[uniform_below(rng, nz.size())];
      const Matrix y = random_invertible(f, n, rng);
      const NearRoot r = prepare_near_root(y, k, alpha);
      const std::size_t defect = rank(matpow(y, std::int64_t(k)) - Matrix::scalar(f, n, alpha));
      CHECK(satisfies_split_condition(r.x, r.dec));
      CHECK(r.defect_rank == defect);
      CHECK(r.dec.dim_S() <= defect);
      CHECK(rk_diff(r.x, y) <= defect);
      CHECK(r.distance_rank == rk_diff(r.x, y));
    }
  }
}

TEST_CASE("near root: trivial cases") {
  auto f = Field::make(7);
  const Matrix y = Matrix::diagonal(f, {f->one(), f->from_int(6)});  // y^2 = 1
  const NearRoot r = prepare_near_root(y, 2, f->one());
  CHECK(r.x == y);
  CHECK(r.dec.dim_S() == 0);
  const Matrix z = Matrix::diagonal(f, {f->from_int(2), f->from_int(3)});  // z^2 - 1 invertible
  const NearRoot s = prepare_near_root(z, 2, f->one());
  CHECK(s.dec.dim_L() == 0);
  CHECK(s.x.is_identity());
}

TEST_CASE("approximate centralizer meets the rank bound") {
  for (auto f : {Field::make(2), Field::make(3), Field::make(5), Field::make(2, 2)}) {
    Rng rng(100 + f->q());
    for (int t = 0; t < 25; ++t) {
      const std::size_t n = 2 + uniform_below(rng, 6);
      std::uint64_t k;
      do k = 1 + uniform_below(rng, 5);
      while (k % f->p() == 0);
      const Matrix y = random_invertible(f, n, rng);
      const NearRoot r = prepare_near_root(y, k, f->one());
      const Matrix phi = random_invertible(f, n, rng);
      const CentralizeResult res = approx_centralize(r.x, r.dec, phi, t);
      CHECK(res.psi * r.x == r.x * res.psi);
      CHECK(is_invertible(res.psi));
      CHECK(res.commutator_rank == rank(r.x * phi - phi * r.x));
      CHECK(res.distance_rank == rk_diff(phi, res.psi));
      CHECK(res.distance_rank <= 2 * k * k * res.commutator_rank + 3 * r.dec.dim_S());
    }
  }
}

TEST_CASE("approximate centralizer fixes commuting input") {
  auto f = Field::make(5);
  Rng rng(8);
  const Matrix y = random_invertible(f, 4, rng);
  const NearRoot r = prepare_near_root(y, 2, f->one());
  const Matrix phi = matpow(r.x, 3);
  const auto res = approx_centralize(r.x, r.dec, phi);
  CHECK(res.psi == phi);
  CHECK(res.distance_rank == 0);
}

TEST_CASE("nearest invertible") {
  auto f = Field::make(3);
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const Matrix m = random_matrix(f, 5, 5, rng);
    const Matrix inv = nearest_invertible(m);
    CHECK(is_invertible(inv));
    CHECK(rank(inv - m) == 5 - rank(m));
  }
}

TEST_CASE("niceblock certificates") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto f = Field::make(p);
    for (std::size_t n = 2; n <= 4; ++n) {
      for (auto grp : {NiceblockGroup::SL, NiceblockGroup::Sp}) {
        const auto cert = build_niceblock(n, f, grp);
        CHECK(verify_niceblock(cert).empty());
        CHECK(cert.x_length == Rational(1, 2));
        CHECK(projective_rank_distance(cert.x.matrix(), Matrix::identity(f, 2 * n)) == Rational(1, 2));
        CHECK(cert.witness_u_length >= Rational(1, 2));
        CHECK(cert.commutator_length >= cert.commutator_target);
      }
    }
  }
}

TEST_CASE("niceblock A-group order by enumeration, n = 2") {
  for (std::uint32_t p : {2u, 3u}) {
    auto f = Field::make(p);
    const auto sl = build_niceblock(2, f, NiceblockGroup::SL);
    CHECK(generate_group(sl.A_generators).size() == std::size_t(p * p * p * p));
    CHECK(sl.p_core_order == p * p * p * p);
    const auto sp = build_niceblock(2, f, NiceblockGroup::Sp);
    CHECK(generate_group(sp.A_generators).size() == std::size_t(p * p * p));
  }
}

TEST_CASE("SL projection is a rank-one change") {
  auto f = Field::make(5);
  const Matrix g = Matrix::diagonal(f, {f->from_int(2), f->one(), f->one()});
  const auto pr = project_to_sl(g);
  CHECK(det(pr.projected) == f->one());
  CHECK(pr.rank_difference == 1);
  const Matrix s = random_sl(3, f, 3).matrix();
  CHECK(project_to_sl(s).projected == s);
  CHECK(project_to_sl(s).distance == Rational(0));
}

TEST_CASE("commutator witnesses: SL_2(3) is not perfect, PSL_2(7) is") {
  auto mul = [](const Matrix& a, const Matrix& b) { return a * b; };
  auto inv = [](const Matrix& a) { return invert(a); };
  auto f3 = Field::make(3);
  const auto sl = enumerate_sl(f3, 2);
  auto eq = [](const Matrix& a, const Matrix& b) { return a == b; };
  std::size_t commutators = 0;
  for (const auto& g : sl) {
    if (auto w = commutator_witness(g, sl, mul, inv, eq)) {
      ++commutators;
      CHECK(invert(w->first) * invert(w->second) * w->first * w->second == g);
    }
  }
  // The derived subgroup of SL_2(3) is the quaternion group of order 8.
  CHECK(commutators == 8);

  auto f7 = Field::make(7);
  const auto psl = enumerate_psl(f7, 2);
  auto peq = [](const Matrix& a, const Matrix& b) { return projectively_equal(a, b); };
  std::size_t psl_commutators = 0;
  for (const auto& g : psl) {
    if (auto w = commutator_witness(g, psl, mul, inv, peq)) {
      ++psl_commutators;
      CHECK(projectively_equal(invert(w->first) * invert(w->second) * w->first * w->second, g));
    }
  }
  CHECK(psl_commutators == 168);
}

TEST_CASE("niceblock centralizer in SL_4(q) is generated by A, H and scalars") {
  for (std::uint32_t p : {2u, 3u}) {
    auto f = Field::make(p);
    const auto cert = build_niceblock(2, f, NiceblockGroup::SL);
    const Matrix& x = cert.x.matrix();
    std::set<std::vector<Elem>> centralizer;
    for_each_in_span(commutant_basis(x), Matrix(f, 4, 4), 1000000, [&](const Matrix& m) {
      if (det(m) == f->one()) centralizer.insert(m.entries());
      return true;
    });
    std::vector<Matrix> gens = cert.A_generators;
    gens.insert(gens.end(), cert.H_generators.begin(), cert.H_generators.end());
    for (auto l : f->enumerate_nonzero())
      if (f->pow(l, 4) == f->one()) gens.push_back(Matrix::scalar(f, 4, l));
    std::set<std::vector<Elem>> generated;
    for (const auto& m : generate_group(gens)) generated.insert(m.entries());
    CHECK(generated == centralizer);
  }
}
