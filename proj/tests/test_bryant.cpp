#include <doctest.h>

#include <cmath>

#include "spinim/bryant.hpp"

using namespace spinim;

namespace {

const cplx I1(0.0, 1.0);

// Closed form based at (x0, y0) + offset; the pipelines anchor the base point at node (0, 0).
double hyper_error(const ImmersionMesh& m, double ox = 0.0, double oy = 0.0) {
  double worst = 0.0;
  for (int j = 0; j < m.chart.ny; ++j)
    for (int i = 0; i < m.chart.nx; ++i) {
      const auto X = horosphere_point(m.chart.x(i) - ox, m.chart.y(j) - oy);
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(m.hyper.at(i, j)[k] - X[k]));
    }
  return worst;
}

double hyper_difference(const ImmersionMesh& a, const ImmersionMesh& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.hyper.v.size(); ++n)
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a.hyper.v[n][k] - b.hyper.v[n][k]));
  return worst;
}

}  // namespace

TEST_CASE("eta on closed-form data") {
  const Chart c = make_chart(0, 1, 0, 1, 8);
  const EtaForm flat = build_eta(make_surface("horosphere", c));
  for (const auto& e : flat.nodes.v) CHECK(e[0].max_abs() + e[1].max_abs() == 0.0);

  // lam = e^x: eta = -(1/2) dy I
  const EtaForm ex = build_eta(make_surface("horosphere_exp", c));
  for (const auto& e : ex.nodes.v) {
    CHECK(e[0].max_abs() == 0.0);
    CHECK((e[1] - (-0.5) * CQuat::I()).max_abs() < 1e-15);
  }
  CHECK(eta_reality_defect(ex) == 0.0);
  CHECK_THROWS_AS(build_eta(make_surface("perturbed_H", c)), std::invalid_argument);
}

TEST_CASE("structure equation of eta converges on CMC-1 data") {
  double prev = 0.0;
  for (int res : {16, 32, 64}) {
    const EtaForm e = build_eta(make_surface("cmc1_cosh", make_chart(-0.5, 0.5, -0.5, 0.5, res)));
    const double r = eta_structure_residual(e).max.value;
    if (prev > 0.0) CHECK(convergence_order(prev, r) >= 1.9);
    prev = r;
  }
}

TEST_CASE("compact factor for eta = -(1/2) dy I is a one-parameter subgroup") {
  const Chart c = make_chart(0, 1, 0, 1, 32);
  const Grid<CQuat> k = integrate_compact_factor(build_eta(make_surface("horosphere_exp", c)));
  double worst = 0.0;
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      const double y = c.y(j);
      const CQuat expect{std::cos(0.5 * y), -std::sin(0.5 * y), 0.0, 0.0};
      worst = std::max(worst, (k.at(i, j) - expect).max_abs());
      CHECK(std::abs(H(k.at(i, j), k.at(i, j)) - 1.0) < 1e-12);
      CHECK((cq_sigma(k.at(i, j)) - k.at(i, j)).max_abs() < 1e-14);
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("compact factor refuses a broken structure equation") {
  const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, 16);
  EtaForm e = build_eta(make_surface("horosphere", c));
  e.nodes.at(8, 8)[0] = CQuat{0.0, 0.0, 0.5, 0.0};
  CHECK_THROWS_AS(integrate_compact_factor(e), Refusal);
}

TEST_CASE("Lawson correspondence: the compact factor is a spinor of the minimal twin") {
  // Same conformal factor and traceless part, H = 0, no ad term: k solves the Killing
  // equation of a minimal surface in flat space.
  double prev = 0.0;
  for (int res : {16, 32, 64}) {
    const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, res);
    const SurfaceSpec s = make_surface("cmc1_cosh", c);
    const Grid<CQuat> k = integrate_compact_factor(build_eta(s));
    SurfaceSpec twin = s;
    for (auto& p : twin.nodes.v) p.H = 0.0;
    const auto base = s.analytic;
    twin.analytic = [base](double x, double y) {
      SurfacePoint p = base(x, y);
      p.H = 0.0;
      return p;
    };
    twin.ad_orientation = 0.0;
    const SpinorGrid phi = map_nodes<MultiVector>(c, [&](int i, int j) { return to_generic(k.at(i, j)); });
    const double r = killing_residual(phi, surface_field(build_sl_n(2), twin)).max.value;
    if (prev > 0.0) CHECK(convergence_order(prev, r) >= 1.9);
    prev = r;
  }
}

TEST_CASE("horosphere null curve is exactly 1 + z((i/2) J + (1/2) K)") {
  const NullCurveSpec nc = horosphere_null_curve();
  const CQuat N = CQuat{0.0, 0.0, 0.5 * I1, 0.5};
  CHECK((N * N).max_abs() < 1e-16);
  const Chart c = make_chart(-1, 1, -1, 1, 16);
  const Grid<CQuat> v = sample_null_curve(nc, c);
  const NullCurveInvariants inv = null_curve_invariants(v);
  CHECK(inv.unit < 1e-14);
  CHECK(inv.holomorphy.max.value < 1e-13);
  CHECK(inv.isotropy.max.value < 1e-13);
  const ImmersionMesh m = assemble_F(v);
  CHECK(hyper_error(m) < 1e-13);
  CHECK(mesh_minkowski_defect(m) < 1e-13);
  CHECK((eval_null_curve_derivative(nc, cplx(0.3, 0.2)) - N).max_abs() < 1e-15);
}

TEST_CASE("constant null curve gives the base point") {
  NullCurveSpec nc;
  nc.terms.push_back({CQuat::one(), 0, 0.0});
  const ImmersionMesh m = assemble_F(sample_null_curve(nc, make_chart(0, 1, 0, 1, 8)));
  for (const auto& F : m.F.v) CHECK((F - MultiVector::scalar(3, 1.0)).max_abs() == 0.0);
}

TEST_CASE("Bryant pipeline reproduces the horosphere closed form") {
  const Chart c = make_chart(-1, 1, -1, 1, 64);
  const BryantResult b = bryant_pipeline(make_surface("horosphere", c));
  CHECK(hyper_error(b.mesh, c.x0, c.y0) < 1e-6);
  CHECK(mesh_minkowski_defect(b.mesh) < 1e-8);
  CHECK(null_curve_invariants(b.v).isotropy.max.value < 1e-10);
  // F from v agrees with the Weierstrass map of g = k v
  CHECK(hyper_difference(b.mesh, weierstrass_F(b.g)) < 1e-12);
}

TEST_CASE("Bryant pipeline agrees with reconstruct on CMC-1 data") {
  const LieModel L = build_sl_n(2);
  for (const char* fam : {"horosphere_exp", "cmc1_cosh"}) {
    const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, 64);
    const SurfaceSpec s = make_surface(fam, c);
    const BryantResult b = bryant_pipeline(s);
    const ImmersionMesh r = weierstrass_F(reconstruct(s, L, MultiVector::scalar(3, 1.0)).phi);
    INFO(fam);
    CHECK(hyper_difference(b.mesh, r) < 1e-6);
    CHECK(killing_residual(b.g, surface_field(L, s)).max.value < 10.0 * c.hx * c.hx);
    const NullCurveInvariants inv = null_curve_invariants(b.v);
    CHECK(inv.holomorphy.max.value < 10.0 * c.hx * c.hx);
    CHECK(inv.isotropy.max.value < 10.0 * c.hx * c.hx);
  }
}

TEST_CASE("Gauss map holomorphy: CMC-1 holomorphic, non-CMC control not, verdicts agree") {
  const LieModel L = build_sl_n(2);
  double prev_cr = 0.0;
  for (int res : {32, 64, 128}) {
    const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, res);
    const SurfaceSpec s = make_surface("cmc1_cosh", c);
    const FrameField f = surface_field(L, s);
    const HolomorphyResult h = gauss_map_holomorphy(integrate_field(f, MultiVector::scalar(3, 1.0)), f);
    if (prev_cr > 0.0) CHECK(convergence_order(prev_cr, h.cauchy_riemann.max.value) >= 1.9);
    prev_cr = h.cauchy_riemann.max.value;
    CHECK(h.curvature.max.value < 10.0 * c.hx * c.hx);

    const SurfaceSpec bad = make_surface("perturbed_H", c);
    const FrameField fb = surface_field(L, bad);
    const HolomorphyResult hb = gauss_map_holomorphy(integrate_field(fb, MultiVector::scalar(3, 1.0)), fb);
    CHECK(hb.cauchy_riemann.max.value > 1e-3);
    CHECK(hb.curvature.max.value > 1e-3);
  }
}

TEST_CASE("general route: h, v = h g and the null equation") {
  const LieModel L3 = build_sl_n(3);
  CVec Xa(8, 0.0), Xb(8, 0.0);
  Xa[6] = 1.0;
  Xb[7] = 1.0;
  double prev = 0.0, prev_F = 0.0;
  for (int res : {16, 32, 64}) {
    const Chart c = make_chart(0, 0.5, 0, 0.5, res);
    const FrameField f = geodesic_field(L3, c, Xa, Xb);
    const SpinorGrid g = exact_spinor_grid(f);
    const GeneralRoute r = general_route(g, f);
    CHECK(r.isotropy < 1e-12);
    // F from v differs from F from g only by the integration error of h
    if (res >= 32) CHECK(r.F_defect < 1e-8);
    if (prev > 0.0) {
      CHECK(convergence_order(prev, r.null_equation.max.value) >= 1.9);
      CHECK(convergence_order(prev_F, r.F_defect) >= 3.5);
    }
    prev = r.null_equation.max.value;
    prev_F = r.F_defect;
    const HolomorphyResult h = gauss_map_holomorphy(g, f);
    CHECK(h.cauchy_riemann.max.value < 1e-10);
    CHECK(h.curvature.max.value < 1e-10);
  }
  // n = 2 surface data through the same route
  const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, 32);
  const SurfaceSpec s = make_surface("horosphere_exp", c);
  const FrameField f = surface_field(build_sl_n(2), s);
  const GeneralRoute r = general_route(integrate_field(f, MultiVector::scalar(3, 1.0)), f);
  CHECK(r.isotropy < 1e-12);
  CHECK(r.F_defect < 1e-8);
  CHECK(r.null_equation.max.value < 10.0 * c.hx * c.hx);
}
