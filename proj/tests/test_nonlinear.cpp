// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include "boussinesq/nonlinear.hpp"
#include "boussinesq/spectral.hpp"
#include "doctest.h"
#include "support.hpp"

namespace bq = boussinesq;
using testing::max_abs;
using testing::max_abs_diff;

namespace
{

bq::VectorField shear_cos_x2(const bq::GridSpec &g)
{
  bq::VectorField u = bq::VectorField::zeros(g);
  u.comps[0][g.index_of({0, 1, 0})] = 0.5;
  u.comps[0][g.index_of({0, -1, 0})] = 0.5;
  return u;
}

}  // namespace

TEST_SUITE("nonlinear")
{
  TEST_CASE("shear flow does not self-advect")
  {
    const bq::GridSpec g = bq::make_grid(2, 16);
    const bq::VectorField u = shear_cos_x2(g);
    CHECK(max_abs(bq::convect_pseudospectral(u, u).field) < 1e-16);
    CHECK(max_abs(bq::convect_convolution(u, u).field) == 0.0);
  }

  TEST_CASE("cos x2 d/dx1 sin x1 = cos x1 cos x2")
  {
    const bq::GridSpec g = bq::make_grid(2, 16);
    const bq::VectorField u = shear_cos_x2(g);
    bq::ScalarField theta = bq::ScalarField::zeros(g);
    theta.at({1, 0, 0}) = bq::Complex(0.0, -0.5);
    theta.at({-1, 0, 0}) = bq::Complex(0.0, 0.5);
    for (const bq::ScalarField &r :
         {bq::convect_pseudospectral(u, theta).field, bq::convect_convolution(u, theta).field})
    {
      double others = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
      {
        const bq::Wavevector j = g.wavevector(i);
        if (std::abs(j[0]) == 1 && std::abs(j[1]) == 1)
        {
          CHECK(std::abs(r.coeffs[i] - 0.25) < 1e-16);
        }
        else
        {
          others = std::max(others, std::abs(r.coeffs[i]));
        }
      }
      CHECK(others < 1e-16);
    }
  }

  TEST_CASE("two-term convolution matches the explicit product formula")
  {
    const bq::GridSpec g = bq::make_grid(2, 16);
    const bq::Wavevector p{1, 2, 0}, q{2, -1, 0};
    const auto d = bq::tangent_directions(p, 2)[0];
    const bq::Complex alpha(0.3, 0.4), beta(-0.7, 0.2);
    bq::VectorField u = bq::VectorField::zeros(g);
    for (int c = 0; c < 2; ++c)
    {
      u.comps[c][g.index_of(p)] = d[c] * alpha;
      u.comps[c][g.index_of({-p[0], -p[1], 0})] = d[c] * std::conj(alpha);
    }
    bq::ScalarField v = bq::ScalarField::zeros(g);
    v.at(q) = beta;
    v.at({-q[0], -q[1], 0}) = std::conj(beta);

    const bq::ScalarField r = bq::convect_convolution(u, v).field;
    int nonzero = 0;
    for (const auto &c : r.coeffs) nonzero += std::abs(c) > 0.0 ? 1 : 0;
    CHECK(nonzero <= 8);
    const double qd = q[0] * d[0] + q[1] * d[1];
    const bq::Complex I(0.0, 1.0);
    CHECK(std::abs(r.at({3, 1, 0}) - I * qd * alpha * beta) < 1e-15);
    CHECK(std::abs(r.at({-1, 3, 0}) - I * (-qd) * alpha * std::conj(beta)) < 1e-15);
    CHECK(std::abs(r.at({-3, -1, 0}) - std::conj(r.at({3, 1, 0}))) < 1e-16);
  }

  TEST_CASE("pseudospectral equals convolution on band-limited inputs")
  {
    for (const auto &g : {bq::make_grid(2, 16), bq::make_grid(3, 8), bq::make_grid(2, 12)})
    {
      const int band = g.dealias_cutoff() / 2;
      for (std::uint64_t seed = 1; seed <= 3; ++seed)
      {
        const bq::VectorField u = testing::random_solenoidal(g, seed, band);
        const bq::VectorField w = testing::random_solenoidal(g, seed + 100, band);
        const bq::ScalarField th = testing::random_scalar(g, seed + 200, band);
        const auto a = bq::convect_pseudospectral(u, w);
        const auto b = bq::convect_convolution(u, w);
        CHECK(a.aliasing_mode == bq::AliasingMode::dealiased_2_3);
        CHECK(b.aliasing_mode == bq::AliasingMode::none);
        CHECK(max_abs_diff(a.field, b.field) <= 1e-12 * max_abs(b.field));
        const auto c = bq::convect_pseudospectral(u, th).field;
        const auto e = bq::convect_convolution(u, th).field;
        CHECK(max_abs_diff(c, e) <= 1e-12 * max_abs(e));
      }
    }
  }

  TEST_CASE("energy flux orthogonality")
  {
    for (const auto &g : {bq::make_grid(2, 16), bq::make_grid(3, 8)})
    {
      const int band = g.dealias_cutoff() / 2;
      const bq::VectorField u = testing::random_solenoidal(g, 7, band);
      const bq::VectorField v = testing::random_solenoidal(g, 8, band);
      const bq::ScalarField th = testing::random_scalar(g, 9, band);
      const bq::VectorField cv = bq::convect_convolution(u, v).field;
      const bq::ScalarField ct = bq::convect_pseudospectral(u, th).field;
      CHECK(std::abs(bq::inner(cv, v)) <= 1e-11 * bq::norm(cv) * bq::norm(v));
      CHECK(std::abs(bq::inner(ct, th)) <= 1e-11 * bq::norm(ct) * bq::norm(th));
    }
  }

  TEST_CASE("results satisfy the field invariants")
  {
    const bq::GridSpec g = bq::make_grid(2, 16);
    const bq::VectorField u = testing::random_solenoidal(g, 3);
    const bq::ScalarField th = testing::random_scalar(g, 4);
    const bq::VectorField a = bq::convect_pseudospectral(u, u).field;
    CHECK(bq::reality_defect(a) == 0.0);
    CHECK(a.comps[0][g.zero_index()] == bq::Complex(0.0, 0.0));
    const bq::ScalarField c = bq::convect_convolution(u, th).field;
    CHECK(bq::reality_defect(c) == 0.0);
    CHECK(c.coeffs[g.zero_index()] == bq::Complex(0.0, 0.0));
  }

  TEST_CASE("buoyancy examples")
  {
    const bq::GridSpec g = bq::make_grid(2, 16);
    bq::ScalarField th = bq::ScalarField::zeros(g);
    th.at({0, 1, 0}) = 0.5;
    th.at({0, -1, 0}) = 0.5;
    CHECK(max_abs(bq::buoyancy(th)) < 1e-17);

    bq::ScalarField th1 = bq::ScalarField::zeros(g);
    th1.at({1, 0, 0}) = 0.5;
    th1.at({-1, 0, 0}) = 0.5;
    const bq::VectorField b = bq::buoyancy(th1);
    CHECK(max_abs(b.comps[0]) == 0.0);
    CHECK(b.comps[1] == th1.coeffs);

    CHECK(max_abs(bq::buoyancy(bq::ScalarField::zeros(g))) == 0.0);
    const bq::ScalarField r = testing::random_scalar(g, 77);
    const bq::VectorField br = bq::buoyancy(r);
    CHECK(bq::divergence_max(br) <= 1e-12 * max_abs(br));
  }

  TEST_CASE("errors")
  {
    const bq::GridSpec g = bq::make_grid(2, 16);
    const bq::GridSpec h = bq::make_grid(2, 8);
    CHECK_THROWS_AS(bq::convect_pseudospectral(bq::VectorField::zeros(g), bq::ScalarField::zeros(h)),
                    std::invalid_argument);
    CHECK_THROWS_AS(bq::convect_convolution(bq::VectorField::zeros(g), bq::VectorField::zeros(h)),
                    std::invalid_argument);
    const bq::GridSpec big = bq::make_grid(2, 128);
    CHECK_THROWS_AS(bq::convect_convolution(bq::VectorField::zeros(big), bq::ScalarField::zeros(big)),
                    std::invalid_argument);
  }
}
