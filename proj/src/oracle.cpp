#include "mrcf/oracle.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace mrcf {
namespace oracle {

LatLongGrid make_latlong(int n_theta, int n_phi) {
  if (n_theta < 4 || n_phi < 4)
    throw std::invalid_argument("make_latlong: grid too small");
  LatLongGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  g.dtheta = kPi / n_theta;
  g.dphi = 2.0 * kPi / n_phi;
  g.theta.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) g.theta[i] = (i + 0.5) * g.dtheta;
  g.phi.resize(n_phi);
  for (int k = 0; k < n_phi; ++k) g.phi[k] = k * g.dphi;
  return g;
}

ArrayXXd fd_laplacian(const LatLongGrid& g, const ArrayXXd& f) {
  if (f.rows() != g.n_theta || f.cols() != g.n_phi)
    throw std::invalid_argument("fd_laplacian: field shape mismatch");
  const int nt = g.n_theta, np = g.n_phi;
  ArrayXXd out(nt, np);
  for (int i = 0; i < nt; ++i) {
    const double sN = std::sin(i * g.dtheta);          // sin at theta_{i-1/2}
    const double sS = std::sin((i + 1) * g.dtheta);    // sin at theta_{i+1/2}
    const double si = std::sin(g.theta[i]);
    const double ct = 1.0 / (si * g.dtheta * g.dtheta);
    const double cp = 1.0 / (si * si * g.dphi * g.dphi);
    for (int k = 0; k < np; ++k) {
      const double fc = f(i, k);
      const double fyp = (i + 1 < nt) ? f(i + 1, k) : 0.0;  // flux weight is 0 there
      const double fym = (i > 0) ? f(i - 1, k) : 0.0;
      const double fxp = f(i, (k + 1) % np);
      const double fxm = f(i, (k + np - 1) % np);
      out(i, k) = ct * (sS * (fyp - fc) - sN * (fc - fym)) + cp * (fxp - 2.0 * fc + fxm);
    }
  }
  return out;
}

double stable_dt(const LatLongGrid& g, double c) {
  // crude spectral-radius estimate of the FD operator
  const double s_min = std::sin(g.theta[0]);
  const double lam = 4.0 / (g.dtheta * g.dtheta) +
                     4.0 / (s_min * s_min * g.dphi * g.dphi) + std::abs(c);
  return 2.5 / lam;  // RK4 real-axis stability ~2.78
}

ArrayXXd timestep_flow(const LatLongGrid& g, const ArrayXXd& f0, double c,
                       double dt, double T) {
  if (dt <= 0.0 || T < 0.0) throw std::invalid_argument("timestep_flow: bad dt or T");
  if (dt > stable_dt(g, c))
    throw std::invalid_argument("timestep_flow: dt above the explicit stability bound");
  const double limit =
      10.0 * std::exp((c + 1.0) * T) * std::max(1.0, f0.abs().maxCoeff());
  auto rhs = [&](const ArrayXXd& f) { return (fd_laplacian(g, f) + c * f).eval(); };
  ArrayXXd f = f0;
  double t = 0.0;
  while (t < T - 1e-14) {
    const double h = std::min(dt, T - t);
    ArrayXXd k1 = rhs(f);
    ArrayXXd k2 = rhs((f + 0.5 * h * k1).eval());
    ArrayXXd k3 = rhs((f + 0.5 * h * k2).eval());
    ArrayXXd k4 = rhs((f + h * k3).eval());
    f += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if (f.abs().maxCoeff() > limit)
      throw std::runtime_error("timestep_flow: instability detected");
  }
  return f;
}

CenterPoint quad_center(const LatLongGrid& g, const ArrayXXd& r) {
  if (g.n_theta < 400 || g.n_phi < 800)
    throw std::invalid_argument("quad_center: grid must be at least 400 x 800");
  if (r.rows() != g.n_theta || r.cols() != g.n_phi)
    throw std::invalid_argument("quad_center: field shape mismatch");
  // composite trapezoid in theta (integrand vanishes at both poles),
  // rectangle rule in the periodic phi direction
  Complex a(0.0, 0.0);
  double b = 0.0;
  for (int i = 0; i < g.n_theta; ++i) {
    const double st = std::sin(g.theta[i]);
    const double ct = std::cos(g.theta[i]);
    Complex row_a(0.0, 0.0);
    double row_b = 0.0;
    for (int k = 0; k < g.n_phi; ++k) {
      row_a += r(i, k) * std::polar(1.0, g.phi[k]);
      row_b += r(i, k);
    }
    a += row_a * (st * st);
    b += row_b * (st * ct);
  }
  const double cell = g.dtheta * g.dphi;
  const double scale = 3.0 / kFourPi;
  return {scale * cell * a, scale * cell * b};
}

namespace {

// Principal radii of the implicit quadric Q(p) = p^T A p + b.p + c at p,
// with the normal flipped to point along `outward`.
bool quadric_radii(const Eigen::Matrix3d& A, const Eigen::Vector3d& bvec, double c,
                   const Eigen::Vector3d& p, const Eigen::Vector3d& outward,
                   double& r1, double& r2) {
  (void)c;
  Eigen::Vector3d grad = 2.0 * A * p + bvec;
  double gn = grad.norm();
  if (gn < 1e-12) return false;
  double flip = grad.dot(outward) < 0.0 ? -1.0 : 1.0;
  grad *= flip;
  const Eigen::Matrix3d H = 2.0 * flip * A;
  const Eigen::Vector3d n = grad / gn;

  // tangent basis
  Eigen::Vector3d t1 = n.unitOrthogonal();
  Eigen::Vector3d t2 = n.cross(t1);
  Eigen::Matrix2d S;
  S(0, 0) = t1.dot(H * t1) / gn;
  S(0, 1) = t1.dot(H * t2) / gn;
  S(1, 0) = S(0, 1);
  S(1, 1) = t2.dot(H * t2) / gn;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(S);
  const double k1 = es.eigenvalues()[0], k2 = es.eigenvalues()[1];
  if (std::abs(k1) < 1e-12 || std::abs(k2) < 1e-12) return false;
  double a1 = 1.0 / k1, a2 = 1.0 / k2;
  r1 = std::max(a1, a2);
  r2 = std::min(a1, a2);
  return true;
}

}  // namespace

MeshRadiiResult mesh_principal_radii(const TriangleMesh& mesh) {
  MeshRadiiResult out;
  const int nv = int(mesh.vertices.size());
  std::vector<std::set<int>> adj(nv);
  for (const auto& f : mesh.faces) {
    adj[f[0]].insert(f[1]);
    adj[f[0]].insert(f[2]);
    adj[f[1]].insert(f[0]);
    adj[f[1]].insert(f[2]);
    adj[f[2]].insert(f[0]);
    adj[f[2]].insert(f[1]);
  }
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& v : mesh.vertices) centroid += v;
  centroid /= double(nv);

  for (int v = 0; v < nv; ++v) {
    std::set<int> ring(adj[v]);
    for (int u : adj[v]) ring.insert(adj[u].begin(), adj[u].end());
    ring.insert(v);
    if (ring.size() < 12) {
      ++out.skipped;
      continue;
    }
    const Eigen::Vector3d p0 = mesh.vertices[v];
    // scale for conditioning
    double scale = 0.0;
    for (int u : ring) scale = std::max(scale, (mesh.vertices[u] - p0).norm());
    if (scale < 1e-14) {
      ++out.skipped;
      continue;
    }
    Eigen::MatrixXd M(ring.size(), 10);
    int row = 0;
    for (int u : ring) {
      const Eigen::Vector3d q = (mesh.vertices[u] - p0) / scale;
      M.row(row++) << q.x() * q.x(), q.y() * q.y(), q.z() * q.z(), q.x() * q.y(),
          q.x() * q.z(), q.y() * q.z(), q.x(), q.y(), q.z(), 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv[8] < 1e-10 || sv[9] / sv[8] > 0.5) {
      // quadric not uniquely determined
      ++out.skipped;
      continue;
    }
    Eigen::VectorXd q = svd.matrixV().col(9);
    Eigen::Matrix3d A;
    A << q[0], 0.5 * q[3], 0.5 * q[4], 0.5 * q[3], q[1], 0.5 * q[5], 0.5 * q[4],
        0.5 * q[5], q[2];
    Eigen::Vector3d bvec(q[6], q[7], q[8]);

    double r1 = 0.0, r2 = 0.0;
    if (!quadric_radii(A, bvec, q[9], Eigen::Vector3d::Zero(), p0 - centroid, r1, r2)) {
      ++out.skipped;
      continue;
    }
    // undo the conditioning scale
    out.samples.push_back({v, p0, r1 * scale, r2 * scale});
  }
  return out;
}

}  // namespace oracle
}  // namespace mrcf
