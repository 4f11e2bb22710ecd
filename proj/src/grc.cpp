#include "spinim/grc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinim {

namespace {

CVec unit(int d, int k) {
  CVec e(d, 0.0);
  e[k] = 1.0;
  return e;
}

Grid<FrameTerms> sample_nodes(const FrameField& f) {
  return map_nodes<FrameTerms>(f.chart, [&](int i, int j) { return f.node(i, j); });
}

// Component grid of a Clifford-valued node field.
Grid<MultiVector> pick(const Grid<FrameTerms>& t, const std::function<MultiVector(const FrameTerms&)>& fn) {
  return map_nodes<MultiVector>(t.chart, [&](int i, int j) { return fn(t.at(i, j)); });
}

}  // namespace

MultiVector ambient_curvature(const LieModel& L, const CVec& X, const CVec& Y) {
  const MultiVector ax = ad_bivector(L, X), ay = ad_bivector(L, Y);
  return 0.25 * (product(ay, ax) - product(ax, ay));
}

CVec ambient_curvature_action(const LieModel& L, const CVec& X, const CVec& Y, const CVec& Z) {
  return commutator(ambient_curvature(L, X, Y), MultiVector::vector(Z)).vector_part();
}

double CurvatureReport::max() const {
  return std::max({gauss.max.value, ricci.max.value, codazzi.max.value, compat.max.value});
}

std::string CurvatureReport::worst_description() const {
  const std::pair<const char*, const ResidualField*> all[] = {
      {"gauss", &gauss}, {"ricci", &ricci}, {"codazzi", &codazzi}, {"compat", &compat}};
  const auto* best = &all[0];
  for (const auto& a : all)
    if (a.second->max.value > best->second->max.value) best = &a;
  std::ostringstream os;
  os << best->first << " residual " << best->second->max.value << " at node (" << best->second->max.i << ", "
     << best->second->max.j << ")";
  return os.str();
}

CurvatureReport grc_residuals(const SurfaceSpec& s, const LieModel& L) {
  if (L.n != 2 || s.normal_rank != 1) throw std::invalid_argument("grc_residuals: surface data needs n = 2 and q = 1");
  const Chart& c = s.chart;
  c.validate();
  const double eps = s.ad_orientation;
  const CVec e1 = unit(3, 0), e2 = unit(3, 1), e3 = unit(3, 2);

  // Ambient data in the orthonormal frame: sectional curvature of the tangent
  // plane, the normal-normal entry, and the normal component of Rbar(E1,E2)E_c.
  const double Kbar = L.B(ambient_curvature_action(L, e2, e3, e3), e2).real();
  const double RN = L.B(ambient_curvature_action(L, e2, e3, e1), e1).real();
  const double Rc[2] = {L.B(ambient_curvature_action(L, e2, e3, e2), e1).real(),
                        L.B(ambient_curvature_action(L, e2, e3, e3), e1).real()};

  Grid<double> hxx(c), hxy(c), hyy(c);
  for (std::size_t k = 0; k < c.nodes(); ++k) {
    const SurfacePoint& p = s.nodes.v[k];
    hxx.v[k] = p.H + p.alpha;
    hxy.v[k] = p.gamma;
    hyy.v[k] = p.H - p.alpha;
  }

  Grid<double> g(c, 0.0), r(c, 0.0), cz(c, 0.0), cp(c, 0.0), dd(c, 0.0);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) {
      const SurfacePoint& p = s.nodes.at(i, j);
      const double h[2][2] = {{hxx.at(i, j), hxy.at(i, j)}, {hxy.at(i, j), hyy.at(i, j)}};
      const double detS = h[0][0] * h[1][1] - h[0][1] * h[1][0];
      const double K = -p.lap_log_lam / (p.lam * p.lam);
      g.at(i, j) = std::abs(K - (Kbar + detS));
      r.at(i, j) = std::abs(0.0 - RN);

      // (nabla_{d_a} h)(E_b, E_c) with frame rotation w(d_a): E1 -> w E2.
      const double w[2] = {-p.lam_y / p.lam, p.lam_x / p.lam};
      double dh[2][2][2];
      for (int a = 0; a < 2; ++a) {
        dh[a][0][0] = fd_dir(hxx, i, j, a);
        dh[a][0][1] = dh[a][1][0] = fd_dir(hxy, i, j, a);
        dh[a][1][1] = fd_dir(hyy, i, j, a);
      }
      auto T = [&](int a, int b, int cc) {
        // w_db: coefficient of E_d in nabla E_b; w_21 = w, w_12 = -w.
        auto wm = [&](int d, int bb) { return d == bb ? 0.0 : (d == 1 ? w[a] : -w[a]); };
        double v = dh[a][b][cc];
        for (int d = 0; d < 2; ++d) v -= wm(d, b) * h[d][cc] + wm(d, cc) * h[b][d];
        return v / p.lam;
      };
      double worst = 0.0;
      for (int cc = 0; cc < 2; ++cc) worst = std::max(worst, std::abs(T(0, 1, cc) - T(1, 0, cc) - Rc[cc]));
      cz.at(i, j) = worst;

      // Clifford-bundle compatibility and the D combination.
      const FrameTerms t = surface_frame_terms(L, p, eps);
      const double lam_d[2] = {p.lam_x, p.lam_y};
      // Christoffel symbols of lam^2 (dx^2 + dy^2): nabla_{d_a} d_b = G[a][b][0] d_x + G[a][b][1] d_y.
      const double lx = p.lam_x / p.lam, ly = p.lam_y / p.lam;
      const double G[2][2][2] = {{{lx, -ly}, {ly, lx}}, {{ly, lx}, {-lx, ly}}};
      double comp = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          CVec dv(3, 0.0);
          dv[b + 1] = lam_d[a];
          const MultiVector d_had = (0.5 * eps) * ad_bivector(L, dv);
          const MultiVector lhs = d_had + commutator(t.d[a].conn, t.d[b].half_ad);
          CVec nab(3, 0.0);
          nab[1] = p.lam * G[a][b][0];
          nab[2] = p.lam * G[a][b][1];
          const MultiVector rhs = (0.5 * eps) * ad_bivector(L, nab);
          comp = std::max(comp, (lhs - rhs).max_abs());

          CVec iiv(3, 0.0);
          iiv[0] = p.lam * p.lam * h[a][b];
          const MultiVector ii_rhs = (0.5 * eps) * ad_bivector(L, iiv);
          comp = std::max(comp, (commutator(t.d[a].half_II, t.d[b].half_ad) - ii_rhs).max_abs());
        }
      cp.at(i, j) = comp;
      const MultiVector D = commutator(t.d[1].half_II, t.d[0].half_ad) - commutator(t.d[0].half_II, t.d[1].half_ad);
      dd.at(i, j) = D.max_abs();
    }
  });

  CurvatureReport rep;
  rep.gauss = residual_field(std::move(g));
  rep.ricci = residual_field(std::move(r));
  rep.codazzi = residual_field(std::move(cz));
  rep.compat = residual_field(std::move(cp));
  rep.D = residual_field(std::move(dd));
  return rep;
}

Decomposition curvature_decomposition(const SpinorGrid& phi, const FrameField& f) {
  const Chart& c = f.chart;
  const Grid<FrameTerms> t = sample_nodes(f);
  // nabla_d phi = d_d phi + conn_d phi
  Grid<MultiVector> nab[2];
  for (int d = 0; d < 2; ++d)
    nab[d] = map_nodes<MultiVector>(c, [&](int i, int j) {
      return fd_dir(phi, i, j, d) + product(t.at(i, j).d[d].conn, phi.at(i, j));
    });
  Grid<MultiVector> hII[2], had[2];
  for (int d = 0; d < 2; ++d) {
    hII[d] = pick(t, [d](const FrameTerms& x) { return x.d[d].half_II; });
    had[d] = pick(t, [d](const FrameTerms& x) { return x.d[d].half_ad; });
  }

  Grid<double> def(c, 0.0), dg(c, 0.0), eg(c, 0.0), rs(c, 0.0);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) {
      const FrameTerms& tt = t.at(i, j);
      const MultiVector& cx = tt.d[0].conn;
      const MultiVector& cy = tt.d[1].conn;
      const MultiVector R = product(fd_x(nab[1], i, j) + product(cx, nab[1].at(i, j)) - fd_y(nab[0], i, j) -
                                        product(cy, nab[0].at(i, j)),
                                    reverse(phi.at(i, j)));
      // nabla_a of a Clifford field: d_a + [conn_a, .]
      auto cov = [&](const Grid<MultiVector>& g, int a) {
        return fd_dir(g, i, j, a) + commutator(tt.d[a].conn, g.at(i, j));
      };
      // With II = 2 half_II and ad = 2 half_ad:
      const MultiVector A = cov(hII[0], 1) - cov(hII[1], 0);
      const MultiVector B = -1.0 * commutator(tt.d[0].half_II, tt.d[1].half_II);
      const MultiVector C = -1.0 * commutator(tt.d[0].half_ad, tt.d[1].half_ad);
      const MultiVector D =
          commutator(tt.d[1].half_II, tt.d[0].half_ad) - commutator(tt.d[0].half_II, tt.d[1].half_ad);
      const MultiVector E = cov(had[0], 1) - cov(had[1], 0);
      def.at(i, j) = (R - (A + B + C + D + E)).max_abs();
      dg.at(i, j) = D.max_abs();
      eg.at(i, j) = E.max_abs();
      rs.at(i, j) = R.max_abs();
    }
  });
  return {residual_field(std::move(def)), residual_field(std::move(dg)), residual_field(std::move(eg)),
          residual_field(std::move(rs))};
}

ResidualField connection_curvature(const FrameField& f, const ConnectionPick& omega) {
  const Chart& c = f.chart;
  Grid<MultiVector> W[2];
  {
    const Grid<FrameTerms> t = sample_nodes(f);
    for (int d = 0; d < 2; ++d) W[d] = pick(t, [&omega, d](const FrameTerms& x) { return omega(x, d); });
  }
  Grid<double> out(c, 0.0);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) {
      const MultiVector R = fd_x(W[1], i, j) - fd_y(W[0], i, j) + commutator(W[0].at(i, j), W[1].at(i, j));
      out.at(i, j) = R.max_abs();
    }
  });
  return residual_field(std::move(out));
}

ResidualField flatness_residual(const FrameField& f) {
  return connection_curvature(f, [](const FrameTerms& t, int d) { return t.d[d].total(); });
}

SpinorGrid integrate_field(const FrameField& f, const MultiVector& phi0, PathOrder order) {
  f.chart.validate(2);
  if (phi0.dim() != f.dim()) throw std::invalid_argument("integrate_field: base spinor dimension mismatch");
  auto rhs = [&f](double x, double y, int dir, const MultiVector& s) {
    return -1.0 * product(f.at(x, y).d[dir].total(), s);
  };
  return integrate_paths(f.chart, phi0, rhs, [](const MultiVector& g) { return renormalize_unit(g); }, order);
}

double max_abs_difference(const SpinorGrid& a, const SpinorGrid& b) {
  if (a.v.size() != b.v.size()) throw std::invalid_argument("grids differ in size");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.v.size(); ++k) worst = std::max(worst, (a.v[k] - b.v[k]).max_abs());
  return worst;
}

ReconstructResult reconstruct(const SurfaceSpec& s, const LieModel& L, const MultiVector& phi0,
                              const ReconstructOptions& opt) {
  const CurvatureReport rep = grc_residuals(s, L);
  const double h = std::max(s.chart.hx, s.chart.hy);
  const double thr = opt.grc_threshold > 0.0 ? opt.grc_threshold : 10.0 * h * h;
  ReconstructResult out;
  out.grc_max = rep.max();
  if (!(out.grc_max <= thr)) {
    const ResidualField* worst = &rep.gauss;
    for (const ResidualField* r : {&rep.ricci, &rep.codazzi, &rep.compat})
      if (r->max.value > worst->max.value) worst = r;
    throw Refusal("reconstruct refused: " + rep.worst_description() + " exceeds threshold", out.grc_max,
                  worst->max.i, worst->max.j);
  }
  const FrameField f = surface_field(L, s);
  out.phi = integrate_field(f, phi0, PathOrder::RowsFirst);
  if (opt.check_path) out.path_defect = max_abs_difference(out.phi, integrate_field(f, phi0, PathOrder::ColumnsFirst));
  return out;
}

}  // namespace spinim
