#include "spinim/bryant.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace spinim {

namespace {

const cplx I1(0.0, 1.0);

struct KV {
  CQuat k, v;
};
KV operator+(const KV& a, const KV& b) { return {a.k + b.k, a.v + b.v}; }
KV operator*(double s, const KV& a) { return {s * a.k, s * a.v}; }

double threshold_for(const Chart& c, double thr) {
  const double h = std::max(c.hx, c.hy);
  return thr > 0.0 ? thr : 10.0 * h * h;
}

CQuat null_generator(const CQuat& k, double lam) {
  // (i/2) lam h J (1 + iI) conj(h) with h = conj(k)
  static const CQuat J1 = CQuat::J() * CQuat{1.0, I1, 0.0, 0.0};
  return (0.5 * I1 * lam) * (cq_tau(k) * J1 * k);
}

}  // namespace

EtaPair eta_at(const SurfacePoint& p) {
  const double l = p.lam;
  EtaPair e;
  e[0] = {0.0, p.lam_y / (2.0 * l), -0.5 * l * p.gamma, 0.5 * l * p.alpha};
  e[1] = {0.0, -p.lam_x / (2.0 * l), 0.5 * l * p.alpha, 0.5 * l * p.gamma};
  return e;
}

EtaForm build_eta(const SurfaceSpec& s, double tol) {
  for (int j = 0; j < s.chart.ny; ++j)
    for (int i = 0; i < s.chart.nx; ++i)
      if (std::abs(s.nodes.at(i, j).H - 1.0) > tol)
        throw std::invalid_argument("build_eta: mean curvature must be 1 (node " + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
  EtaForm e;
  e.chart = s.chart;
  e.nodes = map_nodes<EtaPair>(s.chart, [&](int i, int j) { return eta_at(s.nodes.at(i, j)); });
  auto spec = std::make_shared<SurfaceSpec>(s);
  e.at = [spec](double x, double y) { return eta_at(spec->sample(x, y)); };
  return e;
}

ResidualField eta_structure_residual(const EtaForm& eta) {
  const Chart& c = eta.chart;
  Grid<CQuat> ex(c), ey(c);
  for (std::size_t k = 0; k < c.nodes(); ++k) {
    ex.v[k] = eta.nodes.v[k][0];
    ey.v[k] = eta.nodes.v[k][1];
  }
  Grid<double> out(c, 0.0);
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      const CQuat& a = ex.at(i, j);
      const CQuat& b = ey.at(i, j);
      out.at(i, j) = (fd_x(ey, i, j) - fd_y(ex, i, j) - (a * b - b * a)).max_abs();
    }
  return residual_field(std::move(out));
}

double eta_reality_defect(const EtaForm& eta) {
  double worst = 0.0;
  for (const auto& e : eta.nodes.v)
    for (const auto& q : e) worst = std::max(worst, (cq_sigma(q) - q).max_abs());
  return worst;
}

Grid<CQuat> integrate_compact_factor(const EtaForm& eta, const CQuat& k0, double threshold) {
  const ResidualField s = eta_structure_residual(eta);
  if (!(s.max.value <= threshold_for(eta.chart, threshold)))
    throw Refusal("compact factor refused: structure equation residual too large", s.max.value, s.max.i, s.max.j);
  auto rhs = [&eta](double x, double y, int dir, const CQuat& k) { return eta.at(x, y)[dir] * k; };
  return integrate_paths(eta.chart, k0, rhs, [](const CQuat& q) { return cq_renormalize(q); }, PathOrder::RowsFirst);
}

ImmersionMesh assemble_F(const Grid<CQuat>& v) {
  return mesh_from_F(map_nodes<MultiVector>(v.chart, [&](int i, int j) {
    return to_generic(cq_tau(v.at(i, j)) * cq_sigma(v.at(i, j)));
  }));
}

BryantResult bryant_pipeline(const SurfaceSpec& s, const CQuat& k0, const CQuat& v0, double threshold) {
  const EtaForm eta = build_eta(s);
  const ResidualField st = eta_structure_residual(eta);
  if (!(st.max.value <= threshold_for(s.chart, threshold)))
    throw Refusal("bryant pipeline refused: structure equation residual too large", st.max.value, st.max.i,
                  st.max.j);
  auto spec = std::make_shared<SurfaceSpec>(s);
  auto rhs = [spec](double x, double y, int dir, const KV& st) {
    const SurfacePoint p = spec->sample(x, y);
    const EtaPair e = eta_at(p);
    const CQuat N = null_generator(st.k, p.lam);
    const CQuat dv = dir == 0 ? N * st.v : (I1 * N) * st.v;
    return KV{e[dir] * st.k, dv};
  };
  auto renorm = [](const KV& a) { return KV{cq_renormalize(a.k), cq_renormalize(a.v)}; };
  const Grid<KV> kv = integrate_paths(s.chart, KV{k0, v0}, rhs, renorm, PathOrder::RowsFirst);

  BryantResult r;
  r.k = map_nodes<CQuat>(s.chart, [&](int i, int j) { return kv.at(i, j).k; });
  r.v = map_nodes<CQuat>(s.chart, [&](int i, int j) { return kv.at(i, j).v; });
  r.g = map_nodes<MultiVector>(s.chart, [&](int i, int j) { return to_generic(r.k.at(i, j) * r.v.at(i, j)); });
  r.mesh = assemble_F(r.v);
  return r;
}

CQuat eval_null_curve(const NullCurveSpec& c, cplx z) {
  CQuat out;
  for (const auto& t : c.terms) out += (std::pow(z, t.power) * std::exp(t.rate * z)) * t.coeff;
  return out;
}

CQuat eval_null_curve_derivative(const NullCurveSpec& c, cplx z) {
  CQuat out;
  for (const auto& t : c.terms) {
    const cplx e = std::exp(t.rate * z);
    cplx d = t.rate * std::pow(z, t.power) * e;
    if (t.power > 0) d += static_cast<double>(t.power) * std::pow(z, t.power - 1) * e;
    out += d * t.coeff;
  }
  return out;
}

NullCurveSpec horosphere_null_curve() {
  NullCurveSpec c;
  c.terms.push_back({CQuat::one(), 0, 0.0});
  c.terms.push_back({CQuat{0.0, 0.0, 0.5 * I1, 0.5}, 1, 0.0});
  return c;
}

Grid<CQuat> sample_null_curve(const NullCurveSpec& c, const Chart& chart) {
  return map_nodes<CQuat>(chart, [&](int i, int j) { return eval_null_curve(c, cplx(chart.x(i), chart.y(j))); });
}

NullCurveInvariants null_curve_invariants(const Grid<CQuat>& v) {
  const Chart& c = v.chart;
  NullCurveInvariants out;
  Grid<double> hol(c, 0.0), iso(c, 0.0);
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      const CQuat dx = fd_x(v, i, j), dy = fd_y(v, i, j);
      hol.at(i, j) = (0.5 * (dx + I1 * dy)).max_abs();
      const CQuat dz = 0.5 * (dx - I1 * dy);
      iso.at(i, j) = std::abs(H(dz, dz));
      out.unit = std::max(out.unit, std::abs(H(v.at(i, j), v.at(i, j)) - 1.0));
    }
  out.holomorphy = residual_field(std::move(hol));
  out.isotropy = residual_field(std::move(iso));
  return out;
}

std::array<double, 4> horosphere_point(double x, double y) {
  const double r2 = x * x + y * y;
  return {1.0 + 0.5 * r2, -0.5 * r2, -x, -y};
}

HolomorphyResult gauss_map_holomorphy(const SpinorGrid& phi, const FrameField& f) {
  const Chart& c = phi.chart;
  const Grid<MultiVector> G = map_nodes<MultiVector>(c, [&](int i, int j) {
    const MultiVector& g = phi.at(i, j);
    return product(product(reverse(g), ad_dz(f.node(i, j))), g);
  });
  Grid<double> cr(c, 0.0);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) cr.at(i, j) = (0.5 * (fd_x(G, i, j) + I1 * fd_y(G, i, j))).max_abs();
  });
  HolomorphyResult r;
  r.cauchy_riemann = residual_field(std::move(cr));
  r.curvature = connection_curvature(f, [](const FrameTerms& t, int d) { return primed_connection(t, d); });
  return r;
}

GeneralRoute general_route(const SpinorGrid& g, const FrameField& f) {
  const Chart& c = g.chart;
  GeneralRoute out;
  const MultiVector one = MultiVector::scalar(f.dim(), 1.0);
  auto rhs = [&f](double x, double y, int dir, const MultiVector& h) {
    return product(h, primed_connection(f.at(x, y), dir));
  };
  out.h = integrate_paths(c, one, rhs, [](const MultiVector& m) { return renormalize_unit(m); }, PathOrder::RowsFirst);
  out.v = map_nodes<MultiVector>(c, [&](int i, int j) { return product(out.h.at(i, j), g.at(i, j)); });

  Grid<double> res(c, 0.0), iso(c, 0.0);
  std::vector<double> Fdef(c.ny, 0.0);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) {
      const FrameTerms t = f.node(i, j);
      const MultiVector az = ad_dz(t);
      const MultiVector& h = out.h.at(i, j);
      const MultiVector& v = out.v.at(i, j);
      const MultiVector hwh = -1.0 * product(product(h, az), reverse(h));
      const MultiVector tv = reverse(v);
      const MultiVector rx = product(fd_x(out.v, i, j), tv) - hwh;
      const MultiVector ry = product(fd_y(out.v, i, j), tv) - I1 * hwh;
      res.at(i, j) = std::max(rx.max_abs(), ry.max_abs());
      iso.at(i, j) = std::abs(extended_B(az, az));
      const MultiVector Fv = product(tv, sigma(v));
      const MultiVector Fg = product(reverse(g.at(i, j)), sigma(g.at(i, j)));
      Fdef[j] = std::max(Fdef[j], (Fv - Fg).max_abs());
    }
  });
  out.null_equation = residual_field(std::move(res));
  out.isotropy = grid_max(iso).value;
  out.F_defect = *std::max_element(Fdef.begin(), Fdef.end());
  return out;
}

}  // namespace spinim
