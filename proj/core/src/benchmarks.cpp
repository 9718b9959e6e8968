#include "argyris/benchmarks.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <map>

namespace argyris {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Boundary = std::vector<BoundaryEdge>;

Boundary closed_loop(const std::vector<int>& loop, const std::vector<BoundaryLabel>& labels) {
  Boundary b;
  for (std::size_t i = 0; i < loop.size(); ++i)
    b.push_back({loop[i], loop[(i + 1) % loop.size()], labels.empty() ? BoundaryLabel::Clamped : labels[i]});
  return b;
}

Triangulation square_mesh() {
  std::vector<Point> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  std::vector<std::array<int, 3>> t{{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  return Triangulation::from_coarse(v, t, closed_loop({0, 1, 2, 3}, {}));
}

Triangulation lshape_mesh() {
  std::vector<Point> v{{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {0, 0}, {1, 0}, {-1, 1}, {0, 1}};
  std::vector<std::array<int, 3>> t{{0, 1, 4}, {0, 4, 3}, {1, 2, 4}, {2, 5, 4}, {3, 4, 6}, {4, 7, 6}};
  return Triangulation::from_coarse(v, t, closed_loop({0, 1, 2, 5, 4, 7, 6, 3}, {}));
}

Triangulation slit_mesh() {
  // Vertex 8 duplicates (0,1) on the east face of the slit.
  std::vector<Point> v{{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {0, 0}, {1, 0}, {-1, 1}, {0, 1}, {0, 1}, {1, 1}};
  std::vector<std::array<int, 3>> t{{0, 1, 4}, {0, 4, 3}, {1, 2, 4}, {2, 5, 4},
                                    {3, 4, 6}, {4, 7, 6}, {4, 5, 9}, {4, 9, 8}};
  return Triangulation::from_coarse(v, t, closed_loop({0, 1, 2, 5, 9, 8, 4, 7, 6, 3}, {}));
}

// L-shape on a grid of width 1/2 with "/" diagonals.
Triangulation mixed_lshape_mesh() {
  std::map<std::pair<int, int>, int> id;
  std::vector<Point> v;
  auto vertex = [&](int i, int j) {
    auto [it, fresh] = id.emplace(std::make_pair(i, j), static_cast<int>(v.size()));
    if (fresh) v.emplace_back(-1.0 + 0.5 * i, -1.0 + 0.5 * j);
    return it->second;
  };
  std::vector<std::array<int, 3>> t;
  // Cell (i, j) has lower left corner (-1 + i/2, -1 + j/2).
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      if (i >= 2 && j >= 2) continue;
      const int a = vertex(i, j), b = vertex(i + 1, j), c = vertex(i + 1, j + 1), d = vertex(i, j + 1);
      t.push_back({a, b, c});
      t.push_back({a, c, d});
    }
  auto label = [](const Point& p, const Point& q) {
    const Point m = 0.5 * (p + q);
    if ((std::abs(m.x()) < 1e-12 && m.y() > 0) || (std::abs(m.y()) < 1e-12 && m.x() > 0)) return BoundaryLabel::Clamped;
    if ((std::abs(m.x() + 1) < 1e-12 && m.y() < -0.5) || (std::abs(m.y() + 1) < 1e-12 && m.x() < -0.5))
      return BoundaryLabel::SimplySupported;
    return BoundaryLabel::Free;
  };
  // Counterclockwise boundary walk on the grid.
  const std::vector<std::pair<int, int>> walk{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {4, 1}, {4, 2}, {3, 2},
                                              {2, 2}, {2, 3}, {2, 4}, {1, 4}, {0, 4}, {0, 3}, {0, 2}, {0, 1}};
  Boundary b;
  for (std::size_t k = 0; k < walk.size(); ++k) {
    const int p = id.at(walk[k]), q = id.at(walk[(k + 1) % walk.size()]);
    b.push_back({p, q, label(v[p], v[q])});
  }
  return Triangulation::from_coarse(v, t, b);
}

// Jet of h = Im sqrt(-i z) with the branch cut along the slit ray {0} x (0, 1].
Jet3 slit_h(const Point& x, const Point& side) {
  const std::complex<double> z(x.x(), x.y());
  const double r = std::abs(z);
  Jet3 j;
  if (r == 0.0) return j;
  double phi = std::atan2(-x.x(), x.y());
  if (phi < 0.0) phi += 2.0 * kPi;
  if (x.x() == 0.0 && x.y() > 0.0) phi = side.x() < 0.0 ? 0.0 : 2.0 * kPi;
  const std::complex<double> w = std::polar(std::sqrt(r), phi / 2.0);
  const std::complex<double> I(0.0, 1.0), mI(0.0, -1.0);
  const double c[4] = {1.0, 0.5, -0.25, 0.375};
  std::complex<double> G[4];
  G[0] = w;
  for (int k = 1; k <= 3; ++k) G[k] = std::pow(mI, k) * c[k] * std::pow(w, 1 - 2 * k);
  auto part = [&](int a, int b) { return std::imag(std::pow(I, b) * G[a + b]); };
  j.d = {part(0, 0), part(1, 0), part(0, 1), part(2, 0), part(1, 1), part(0, 2),
         part(3, 0), part(2, 1), part(1, 2), part(0, 3)};
  return j;
}

}  // namespace

Jet3 slit_solution(const Point& x, const Point& side) {
  const Jet3 X = Jet3::x(x.x()), Y = Jet3::y(x.y());
  const Jet3 rho = X * X + Y * Y;
  return (-1.0 / 16.0) * (rho * slit_h(x, side)) + (1.0 / 32.0) * (rho * (X * X));
}

Eigen::Matrix2d slit_hessian(const Point& x, const Point& side) { return slit_solution(x, side).hessian(); }

const char* to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::B1: return "B1";
    case BenchmarkId::B2: return "B2";
    case BenchmarkId::B3: return "B3";
    case BenchmarkId::B4: return "B4";
  }
  return "?";
}

BenchmarkId parse_benchmark(const std::string& text) {
  if (text == "B1") return BenchmarkId::B1;
  if (text == "B2") return BenchmarkId::B2;
  if (text == "B3") return BenchmarkId::B3;
  if (text == "B4") return BenchmarkId::B4;
  throw ConfigurationError("unknown benchmark '" + text + "'");
}

Problem Benchmark::problem() const {
  Problem p;
  p.mesh = mesh;
  p.F = F;
  p.g = g;
  if (has_reference()) {
    const Benchmark copy = *this;
    p.error = [copy](const FeFunction& u_h) { return reference_error(copy, u_h); };
  }
  return p;
}

Benchmark make_benchmark(BenchmarkId id, double kappa) {
  if (!(kappa >= 0.0)) throw ConfigurationError("kappa must be nonnegative");
  Benchmark b;
  b.id = id;
  auto one = [](const Point&) { return 1.0; };
  switch (id) {
    case BenchmarkId::B1:
      b.domain = "square";
      b.mesh = square_mesh();
      b.F.f = one;
      b.reference_energy = 3.8912007750677e-4;
      break;
    case BenchmarkId::B2:
      b.domain = "lshape";
      b.mesh = lshape_mesh();
      b.F.f = one;
      b.reference_energy = 3.57857007158618e-3;
      break;
    case BenchmarkId::B3:
      b.domain = "slit";
      b.mesh = slit_mesh();
      b.F.f = one;
      b.g = slit_solution;
      b.exact = slit_solution;
      b.exact_hessian = slit_hessian;
      break;
    case BenchmarkId::B4: {
      b.domain = "lshape-mixed";
      b.mesh = mixed_lshape_mesh();
      int z = -1;
      for (int v = 0; v < b.mesh.num_vertices(); ++v)
        if ((b.mesh.vertices[v] - Point(-0.5, -0.5)).norm() < 1e-14) z = v;
      b.F.point_loads.push_back({z, 1.0});
      if (kappa != 0.0)
        b.g = [kappa](const Point& x, const Point&) {
          const Jet3 X = Jet3::x(x.x()), Y = Jet3::y(x.y());
          const Jet3 p = (X * X * X) * (Y * Y * Y);
          return 1e-3 * sin((kappa * kPi) * p);
        };
      break;
    }
  }
  return b;
}

std::optional<double> reference_error(const Benchmark& b, const FeFunction& u_h) {
  if (b.exact_hessian) return std::sqrt(std::max(0.0, energy_error_sq(u_h, b.exact_hessian)));
  if (!b.reference_energy) return std::nullopt;
  const double E = *b.reference_energy;
  const double err2 = E - 2.0 * load_functional(b.F, u_h) + energy_norm_sq(u_h);
  if (err2 < -1e-12)
    std::clog << "warning: energy identity gives a negative squared error (" << err2
              << "); the reference energy is inconsistent with this discretization\n";
  return std::sqrt(std::max(0.0, err2));
}

void write_csv_header(std::ostream& out, bool contraction) {
  out << "level,N,error,eta,osc_f,osc_g,iters,eta_alg,seconds";
  if (contraction) out << ",C,c";
  out << '\n';
}

void write_csv_row(std::ostream& out, const ConvergenceRecord& rec, bool contraction) {
  char buf[512];
  const double nan = std::nan("");
  std::snprintf(buf, sizeof buf, "%d,%ld,%.12e,%.12e,%.12e,%.12e,%d,%.12e,%.6f", rec.level, rec.N,
                rec.error ? *rec.error : nan, rec.eta, rec.osc_f, rec.osc_g, rec.iterations, rec.eta_alg, rec.seconds);
  out << buf;
  if (contraction) {
    const double C = rec.contraction ? rec.contraction->C : nan, c = rec.contraction ? rec.contraction->c : nan;
    std::snprintf(buf, sizeof buf, ",%.8f,%.6f", C, c);
    out << buf;
  }
  out << '\n';
}

}  // namespace argyris
