#include "spinim/spin_rep.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace spinim {

namespace {

const cplx I1(0.0, 1.0);

void require_same_chart(const Chart& a, const Chart& b) {
  if (a.nx != b.nx || a.ny != b.ny || a.hx != b.hx || a.hy != b.hy || a.x0 != b.x0 || a.y0 != b.y0)
    throw std::invalid_argument("grids live on different charts");
}

Grid<CQuat> to_quaternion_grid(const SpinorGrid& phi) {
  if (phi.v.empty() || phi.v.front().dim() != 3) throw std::invalid_argument("quaternion view needs dim 3 spinors");
  return map_nodes<CQuat>(phi.chart, [&](int i, int j) { return from_generic(phi.at(i, j)); });
}

}  // namespace

MultiVector pairing(const MultiVector& phi, const MultiVector& psi) { return product(reverse(psi), phi); }

std::array<double, 4> hyperboloid_coords(const CQuat& F) {
  return {F.z0.real(), F.z1.imag(), F.z2.imag(), F.z3.imag()};
}

std::array<double, 4> hyperboloid_from_spinor(const CQuat& q) {
  const cplx z0 = q.z0, z1 = q.z1, z2 = q.z2, z3 = q.z3;
  auto c = [](cplx a) { return std::conj(a); };
  const double X0 = std::norm(z0) + std::norm(z1) + std::norm(z2) + std::norm(z3);
  const cplx iX1 = z0 * c(z1) - z1 * c(z0) - z2 * c(z3) + z3 * c(z2);
  const cplx iX2 = z0 * c(z2) - z2 * c(z0) + z1 * c(z3) - z3 * c(z1);
  const cplx iX3 = z0 * c(z3) - z3 * c(z0) - z1 * c(z2) + z2 * c(z1);
  return {X0, (iX1 / I1).real(), (iX2 / I1).real(), (iX3 / I1).real()};
}

std::array<double, 3> ball_point(const std::array<double, 4>& X) {
  const double s = 1.0 / (1.0 + X[0]);
  return {X[1] * s, X[2] * s, X[3] * s};
}

double minkowski_defect(const std::array<double, 4>& X) {
  return std::abs(-X[0] * X[0] + X[1] * X[1] + X[2] * X[2] + X[3] * X[3] + 1.0);
}

ImmersionMesh mesh_from_F(const Grid<MultiVector>& F) {
  ImmersionMesh m;
  m.chart = F.chart;
  m.F = F;
  if (!F.v.empty() && F.v.front().dim() == 3) {
    m.has_hyperboloid = true;
    m.hyper = map_nodes<std::array<double, 4>>(F.chart, [&](int i, int j) {
      return hyperboloid_coords(from_generic(F.at(i, j)));
    });
    m.ball = map_nodes<std::array<double, 3>>(F.chart, [&](int i, int j) { return ball_point(m.hyper.at(i, j)); });
  }
  return m;
}

ImmersionMesh weierstrass_F(const SpinorGrid& phi) {
  return mesh_from_F(map_nodes<MultiVector>(phi.chart, [&](int i, int j) {
    const MultiVector& g = phi.at(i, j);
    return product(reverse(g), sigma(g));
  }));
}

ResidualField residual_field(Grid<double> g) {
  ResidualField r;
  r.max = grid_max(g);
  r.node = std::move(g);
  return r;
}

double unit_defect(const SpinorGrid& phi) {
  double worst = 0.0;
  for (const auto& g : phi.v) {
    MultiVector t = product(reverse(g), g);
    t[0] -= 1.0;
    worst = std::max(worst, t.max_abs());
  }
  return worst;
}

double cartan_defect(const ImmersionMesh& m) {
  double worst = 0.0;
  for (const auto& F : m.F.v) worst = std::max(worst, (sigma(reverse(F)) - F).max_abs());
  return worst;
}

double mesh_minkowski_defect(const ImmersionMesh& m) {
  if (!m.has_hyperboloid) throw std::invalid_argument("mesh has no hyperboloid coordinates");
  double worst = 0.0;
  for (const auto& X : m.hyper.v) {
    worst = std::max(worst, minkowski_defect(X));
    if (!(X[0] > 0.0)) worst = std::max(worst, 1.0 + std::abs(X[0]));
  }
  return worst;
}

ResidualField killing_residual(const SpinorGrid& phi, const FrameField& f) {
  require_same_chart(phi.chart, f.chart);
  f.chart.validate(3);
  Grid<double> out(phi.chart, 0.0);
  parallel_for(phi.chart.ny, [&](int j) {
    for (int i = 0; i < phi.chart.nx; ++i) {
      const FrameTerms t = f.node(i, j);
      double worst = 0.0;
      for (int d = 0; d < 2; ++d) {
        const MultiVector r = fd_dir(phi, i, j, d) + product(t.d[d].total(), phi.at(i, j));
        worst = std::max(worst, r.max_abs());
      }
      out.at(i, j) = worst;
    }
  });
  return residual_field(std::move(out));
}

DerivativeDefects derivative_identity_check(const SpinorGrid& phi, const FrameField& f) {
  require_same_chart(phi.chart, f.chart);
  const Chart& c = phi.chart;
  const Grid<MultiVector> F = map_nodes<MultiVector>(c, [&](int i, int j) {
    return product(reverse(phi.at(i, j)), sigma(phi.at(i, j)));
  });
  Grid<double> d1(c, 0.0), d2(c, 0.0);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) {
      const FrameTerms t = f.node(i, j);
      const MultiVector& g = phi.at(i, j);
      const MultiVector tg = reverse(g);
      double w1 = 0.0, w2 = 0.0;
      for (int d = 0; d < 2; ++d) {
        const MultiVector ad = 2.0 * t.d[d].half_ad;
        const MultiVector dF = fd_dir(F, i, j, d);
        const MultiVector e1 = dF - product(product(tg, ad), sigma(g));
        const MultiVector e2 = product(reverse(F.at(i, j)), dF) + sigma(product(product(tg, ad), g));
        w1 = std::max(w1, e1.max_abs());
        w2 = std::max(w2, e2.max_abs());
      }
      d1.at(i, j) = w1;
      d2.at(i, j) = w2;
    }
  });
  return {residual_field(std::move(d1)), residual_field(std::move(d2))};
}

MorelResidual morel_dirac_check(const SpinorGrid& phi, const SurfaceSpec& s) {
  require_same_chart(phi.chart, s.chart);
  const Chart& c = phi.chart;
  const double eps = s.ad_orientation;
  const Grid<CQuat> q = to_quaternion_grid(phi);
  const Grid<CQuat> plus = map_nodes<CQuat>(c, [&](int i, int j) { return split_even(q.at(i, j)).plus; });
  const Grid<double> norm2 = map_nodes<double>(c, [&](int i, int j) {
    const PlusCoords z = plus_coords(plus.at(i, j));
    return std::norm(z.z1) + std::norm(z.z2);
  });
  const LieModel L = build_sl_n(2);
  Grid<double> rd(c, 0.0), rn(c, 0.0);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) {
      const SurfacePoint p = s.nodes.at(i, j);
      const FrameTerms t = surface_frame_terms(L, p, eps);
      const CQuat& ph = plus.at(i, j);
      CQuat nab[2];
      for (int d = 0; d < 2; ++d) nab[d] = fd_dir(plus, i, j, d) + from_generic(t.d[d].conn) * ph;
      // Dirac operator sum_a E_a . nu . nabla_{E_a}, with E1 nu = -K and E2 nu = J.
      const CQuat D = (1.0 / p.lam) * (-1.0 * (CQuat::K() * nab[0]) + CQuat::J() * nab[1]);
      const CQuat psibar = (eps * I1) * (CQuat::I() * ph);
      rd.at(i, j) = (D - p.H * ph + psibar).max_abs();

      const PlusCoords z = plus_coords(ph);
      const cplx zz = z.z1 * std::conj(z.z2);
      double worst = 0.0;
      for (int d = 0; d < 2; ++d) {
        const cplx xv = d == 0 ? cplx(p.lam, 0.0) : cplx(0.0, -p.lam);  // x2 - i x3
        const double val = fd_dir(norm2, i, j, d) + 2.0 * eps * (xv * zz).real();
        worst = std::max(worst, std::abs(val));
      }
      rn.at(i, j) = worst;
    }
  });
  MorelResidual r;
  r.dirac = residual_field(std::move(rd));
  r.norm = residual_field(std::move(rn));
  r.min_psi = std::sqrt(*std::min_element(norm2.v.begin(), norm2.v.end()));
  return r;
}

MorelIdentityDeviation morel_identities(std::uint64_t seed, int instances) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const LieModel L = build_sl_n(2);
  MorelIdentityDeviation dev;
  const CQuat one_plus = {1.0, I1, 0.0, 0.0};
  for (int it = 0; it < instances; ++it) {
    const cplx z1(u(rng), u(rng)), z2(u(rng), u(rng));
    const double x2 = u(rng), x3 = u(rng);
    const CQuat ph = plus_from_coords(z1, z2);
    const CQuat lhs1 = cq_tau(ph) * cq_sigma(ph);
    const CQuat rhs1 = (2.0 * (std::norm(z1) + std::norm(z2))) * one_plus;
    dev.pairing = std::max(dev.pairing, (lhs1 - rhs1).max_abs());

    const CQuat ad = from_generic(ad_bivector(L, CVec{0.0, x2, x3}));
    const CQuat lhs2 = cq_tau(ph) * ad * cq_sigma(ph);
    const double re = (cplx(x2, -x3) * z1 * std::conj(z2)).real();
    const CQuat rhs2 = (-4.0 * re) * one_plus;
    dev.ad_pairing = std::max(dev.ad_pairing, (lhs2 - rhs2).max_abs());
  }
  return dev;
}

ResidualField pairing_compatibility(const SpinorGrid& phi, const SpinorGrid& psi, const FrameField& f) {
  require_same_chart(phi.chart, psi.chart);
  const Chart& c = phi.chart;
  const Grid<MultiVector> P = map_nodes<MultiVector>(c, [&](int i, int j) { return pairing(phi.at(i, j), psi.at(i, j)); });
  Grid<double> out(c, 0.0);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) {
      const FrameTerms t = f.node(i, j);
      double worst = 0.0;
      for (int d = 0; d < 2; ++d) {
        const MultiVector nphi = fd_dir(phi, i, j, d) + product(t.d[d].conn, phi.at(i, j));
        const MultiVector npsi = fd_dir(psi, i, j, d) + product(t.d[d].conn, psi.at(i, j));
        const MultiVector r = fd_dir(P, i, j, d) - pairing(nphi, psi.at(i, j)) - pairing(phi.at(i, j), npsi);
        worst = std::max(worst, r.max_abs());
      }
      out.at(i, j) = worst;
    }
  });
  return residual_field(std::move(out));
}

}  // namespace spinim
