#include "spinim/frame.hpp"

#include <memory>
#include <stdexcept>

namespace spinim {

namespace {
const cplx I1(0.0, 1.0);
}

MultiVector primed_connection(const FrameTerms& t, int dir) {
  if (dir == 0) return t.d[0].conn + t.d[0].half_II + I1 * t.d[1].half_ad;
  return t.d[1].conn + t.d[1].half_II - I1 * t.d[0].half_ad;
}

MultiVector ad_dz(const FrameTerms& t) { return t.d[0].half_ad - I1 * t.d[1].half_ad; }

FrameTerms surface_frame_terms(const LieModel& L, const SurfacePoint& p, double orientation) {
  if (L.n != 2) throw std::invalid_argument("surface_frame_terms: surface charts need n = 2");
  FrameTerms t;
  // Levi-Civita rotation of (e2, e3): nabla_X e2 = w(X) e3.
  const double w[2] = {-p.lam_y / p.lam, p.lam_x / p.lam};
  const double S[2][2] = {{p.H + p.alpha, p.gamma}, {p.gamma, p.H - p.alpha}};
  for (int d = 0; d < 2; ++d) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(3, 3);
    u(2, 1) = w[d];
    u(1, 2) = -w[d];
    t.d[d].conn = bivector_of_skew(u);

    Eigen::MatrixXcd s(1, 2);
    s(0, 0) = p.lam * S[d][0];
    s(0, 1) = p.lam * S[d][1];
    t.d[d].half_II = mixed_bivector(3, {1, 2}, {0}, s);

    CVec v(3, 0.0);
    v[d + 1] = p.lam;
    t.d[d].ad_vec = v;
    t.d[d].half_ad = (0.5 * orientation) * ad_bivector(L, v);
  }
  return t;
}

Grid<MultiVector> exact_spinor_grid(const FrameField& f) {
  if (!f.has_exact_spinor()) throw std::invalid_argument("exact_spinor_grid: field has no closed-form spinor");
  const Chart& c = f.chart;
  std::vector<MultiVector> fy(c.ny), fx(c.nx);
  parallel_for(c.ny, [&](int j) { fy[j] = f.spinor_y_factor(c.y(j)); });
  parallel_for(c.nx, [&](int i) { fx[i] = f.spinor_x_factor(c.x(i)); });
  return map_nodes<MultiVector>(c, [&](int i, int j) { return product(fy[j], fx[i]); });
}

FrameField surface_field(const LieModel& L, const SurfaceSpec& s) {
  FrameField f;
  f.name = s.family;
  f.L = L;
  f.chart = s.chart;
  f.ad_orientation = s.ad_orientation;
  const double eps = s.ad_orientation;
  // Copy the surface data so the field outlives the caller's object.
  auto spec = std::make_shared<SurfaceSpec>(s);
  auto model = std::make_shared<LieModel>(L);
  f.at = [spec, model, eps](double x, double y) { return surface_frame_terms(*model, spec->sample(x, y), eps); };
  return f;
}

FrameField geodesic_field(const LieModel& L, const Chart& c, const CVec& Xa, const CVec& Xb) {
  if (static_cast<int>(Xa.size()) != L.d || static_cast<int>(Xb.size()) != L.d)
    throw std::invalid_argument("geodesic_field: generator dimension mismatch");
  FrameField f;
  f.name = "geodesic";
  f.L = L;
  f.chart = c;
  f.ad_orientation = 1.0;
  auto model = std::make_shared<LieModel>(L);
  const Eigen::MatrixXcd A = L.to_matrix(Xa), Bm = L.to_matrix(Xb);
  f.at = [model, A, Bm, Xb](double, double y) {
    const Eigen::MatrixXcd M = matrix_exp(-y * Bm);
    const CVec beta[2] = {model->coords(M * A * M.inverse()), Xb};
    FrameTerms t;
    for (int d = 0; d < 2; ++d) {
      t.d[d].conn = ad_tilde(*model, h_part(beta[d]));
      t.d[d].ad_vec = m_part(beta[d]);
      t.d[d].half_ad = ad_tilde(*model, t.d[d].ad_vec);
      t.d[d].half_II = MultiVector(model->d);
    }
    return t;
  };
  f.spinor_y_factor = [model, Xb](double y) { return lift_Ad(*model, Xb, -y).spin; };
  f.spinor_x_factor = [model, Xa](double x) { return lift_Ad(*model, Xa, -x).spin; };
  return f;
}

}  // namespace spinim
