#include "gaudin/correspond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "precision.hpp"

namespace gaudin {

namespace {

/// H_i restricted to one sector, in quad precision.
std::vector<quad::Matrix> sector_hamiltonians(const std::vector<std::size_t>& basis, const GaudinModel& model) {
  const int n = model.n();
  const std::size_t d = basis.size();
  std::vector<std::size_t> position(model.dimension(), d);
  for (std::size_t r = 0; r < d; ++r) position[basis[r]] = r;
  const quad::Cplx hbar = quad::lift(model.hbar());
  std::vector<quad::Cplx> x, k;
  for (auto v : model.marked_points()) x.push_back(quad::lift(v));
  for (auto v : model.twist()) k.push_back(quad::lift(v));

  std::vector<quad::Matrix> out;
  for (int i = 0; i < n; ++i) {
    quad::Matrix h = quad::zeros(d);
    for (std::size_t c = 0; c < d; ++c) {
      const auto w = model.letters(basis[c]);
      h[c][c] += hbar * k[w[i]];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        auto s = w;
        std::swap(s[i], s[j]);
        h[position[model.index_of(s)]][c] += hbar * hbar / (x[i] - x[j]);
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

/// Joint eigenvalues polished by inverse iteration on a fixed generic combination.
std::vector<quad::Cplx> refine_eigenvalues(const JointState& state, const GaudinModel& model) {
  const int n = model.n();
  const auto basis = sector_basis(state.m, model);
  const auto hs = sector_hamiltonians(basis, model);
  const std::size_t d = basis.size();
  quad::Matrix A = quad::zeros(d);
  quad::Cplx mu(0);
  for (int i = 0; i < n; ++i) {
    const quad::Real c = quad::Real(1) + quad::Real(0.37) * i;
    mu += c * quad::lift(state.H[i]);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s) A[r][s] += c * hs[i][r][s];
  }
  for (std::size_t r = 0; r < d; ++r) A[r][r] -= mu;
  std::vector<quad::Cplx> v(d);
  for (std::size_t r = 0; r < d; ++r) v[r] = quad::lift(state.vector[static_cast<Eigen::Index>(basis[r])]);
  quad::normalize(v);
  for (int it = 0; it < 3; ++it) {
    v = quad::solve(A, v);
    quad::normalize(v);
  }
  std::vector<quad::Cplx> H;
  for (int i = 0; i < n; ++i) H.push_back(quad::dot(v, quad::apply(hs[i], v)) / quad::dot(v, v));
  return H;
}

}  // namespace

CMPhasePoint initial_point(const std::vector<Complex>& H, const GaudinModel& model) {
  CMPhasePoint s{model.hbar(), model.marked_points(), {}};
  for (const auto& h : H) s.p.push_back(-h / model.hbar());
  return s;
}

CorrespondenceRecord build_y0(const JointState& state, const GaudinModel& model, std::size_t index) {
  const int n = model.n();
  if (static_cast<int>(state.H.size()) != n) throw std::invalid_argument("build_y0: state needs n eigenvalues");
  CorrespondenceRecord rec;
  rec.state = index;
  rec.m = state.m;
  const auto Hq = refine_eigenvalues(state, model);
  for (const auto& h : Hq) rec.H.push_back(quad::drop(h));
  rec.Y0 = lax_matrices(initial_point(rec.H, model)).Y;

  const quad::Cplx hbar = quad::lift(model.hbar());
  quad::Matrix Y = quad::zeros(n);
  const auto& x = model.marked_points();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      Y[i][k] = i == k ? Hq[i] / hbar : hbar / (quad::lift(x[k]) - quad::lift(x[i]));
  if (n == 0) return rec;
  const Eigen::VectorXcd guess = rec.Y0.eigenvalues();
  std::vector<quad::Cplx> z;
  for (int i = 0; i < n; ++i) {
    // Aberth needs distinct starting points
    const double theta = 2.0 * M_PI * (i + 0.25) / n;
    z.push_back(quad::lift(guess[i] + 1e-3 * Complex(std::cos(theta), std::sin(theta))));
  }
  for (const auto& r : quad::roots(quad::char_poly(Y), z)) rec.Y0_spectrum.push_back(quad::drop(r));
  return rec;
}

MatchReport twist_spectrum_check(const CorrespondenceRecord& record, const GaudinModel& model, double tolerance) {
  MatchReport rep;
  for (std::size_t a = 0; a < record.m.size(); ++a)
    for (int j = 0; j < record.m[a]; ++j) rep.expected.push_back(model.twist()[a]);
  if (rep.expected.size() != record.Y0_spectrum.size()) {
    rep.max_deviation = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.assignment = poly::match_min_cost(record.Y0_spectrum, rep.expected);
  for (std::size_t i = 0; i < rep.assignment.size(); ++i)
    rep.max_deviation =
        std::max(rep.max_deviation, std::abs(record.Y0_spectrum[i] - rep.expected[rep.assignment[i]]));
  rep.pass = rep.max_deviation <= tolerance;
  return rep;
}

poly::Poly twist_polynomial(const std::vector<int>& m, const GaudinModel& model) {
  std::vector<Complex> r;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (int j = 0; j < m[a]; ++j) r.push_back(model.twist()[a]);
  return poly::from_roots(r);
}

namespace {

Eigen::MatrixXcd pair_weights(const GaudinModel& model) {
  const int n = model.n();
  const auto& x = model.marked_points();
  const Complex h2 = model.hbar() * model.hbar();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) w(i, j) = h2 / ((x[i] - x[j]) * (x[i] - x[j]));
  return w;
}

std::vector<Complex> scaled(const std::vector<Complex>& H, Complex hbar) {
  std::vector<Complex> a;
  for (const auto& h : H) a.push_back(h / hbar);
  return a;
}

void check_content(const std::vector<int>& m, const GaudinModel& model) {
  if (static_cast<int>(m.size()) != model.N() || std::accumulate(m.begin(), m.end(), 0) != model.n() ||
      std::any_of(m.begin(), m.end(), [](int v) { return v < 0; }))
    throw std::invalid_argument("sector content must have N non-negative entries summing to n");
}

}  // namespace

double spectral_residual(const std::vector<Complex>& H, const std::vector<int>& m, const GaudinModel& model,
                 std::vector<Complex> z_samples) {
  check_content(m, model);
  const int n = model.n();
  auto J = matching_expansion(scaled(H, model.hbar()), pair_weights(model));
  const poly::Poly lhs(J.rbegin(), J.rend());
  const auto rhs = twist_polynomial(m, model);
  if (z_samples.empty()) {
    double r = 1.0;
    for (const auto& k : model.twist()) r = std::max(r, 1.0 + std::abs(k));
    z_samples = poly::circle_points(0.0, r, n + 1);
  }
  double worst = 0.0;
  for (const auto& z : z_samples) {
    const Complex b = poly::evaluate(rhs, z);
    worst = std::max(worst, std::abs(poly::evaluate(lhs, z) - b) / std::max(1.0, std::abs(b)));
  }
  return worst;
}

double spectral_residual(const CorrespondenceRecord& record, const GaudinModel& model, std::vector<Complex> z_samples) {
  return spectral_residual(record.H, record.m, model, std::move(z_samples));
}

double cyclicity(const Eigen::MatrixXcd& Y) {
  const auto n = Y.rows();
  if (n == 0) return 1.0;
  Eigen::MatrixXcd K(n, n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    K.col(j) = v;
    v = Y.transpose() * v;
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(K).singularValues();
  return sv[n - 1] / sv[0];
}

SpectralSolveResult solve_spectral_system(const GaudinModel& model, const std::vector<int>& m, const SpectralSolveOptions& options) {
  check_content(m, model);
  const int n = model.n();
  const Complex hbar = model.hbar();
  const auto& x = model.marked_points();
  const auto w = pair_weights(model);
  const auto target_asc = twist_polynomial(m, model);
  const std::vector<Complex> target(target_asc.rbegin(), target_asc.rend());

  SpectralSolveResult res;
  res.m = m;
  res.sector_dimension = multinomial(m);
  if (n == 0) {
    res.solutions.push_back({});
    res.converged_starts = 1;
    return res;
  }
  double fscale = 1.0;
  for (const auto& c : target) fscale += std::abs(c);

  auto residual = [&](const std::vector<Complex>& H, Eigen::VectorXcd& F) {
    const auto J = matching_expansion(scaled(H, hbar), w);
    F.resize(n);
    for (int k = 1; k <= n; ++k) F[k - 1] = J[k] - target[k];
    return F.norm();
  };
  auto jacobian = [&](const std::vector<Complex>& H) {
    Eigen::MatrixXcd Jm(n, n);
    for (int l = 0; l < n; ++l) {
      // d/da_l replaces the factor (z - a_l) by -1: minus the expansion without l
      std::vector<Complex> a;
      std::vector<int> keep;
      for (int i = 0; i < n; ++i)
        if (i != l) {
          a.push_back(H[i] / hbar);
          keep.push_back(i);
        }
      Eigen::MatrixXcd wr(n - 1, n - 1);
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) wr(i, j) = w(keep[i], keep[j]);
      const auto D = matching_expansion(a, wr);
      for (int k = 1; k <= n; ++k) Jm(k - 1, l) = -D[k - 1] / hbar;
    }
    return Jm;
  };

  std::seed_seq seq{options.seed, static_cast<std::uint64_t>(std::accumulate(
                                      m.begin(), m.end(), std::uint64_t{0},
                                      [](std::uint64_t acc, int v) { return acc * 31 + static_cast<std::uint64_t>(v); }))};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<int> letters;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (int j = 0; j < m[a]; ++j) letters.push_back(static_cast<int>(a));

  double kspread = 0.0;
  for (const auto& k : model.twist()) kspread = std::max(kspread, std::abs(k));
  for (int s = 0; s < options.starts; ++s) {
    std::shuffle(letters.begin(), letters.end(), rng);
    std::vector<Complex> H(n);
    for (int i = 0; i < n; ++i) {
      H[i] = hbar * model.twist()[letters[i]];
      for (int j = 0; j < n; ++j)
        if (j != i) H[i] += unit(rng) * hbar * hbar / (x[i] - x[j]);
      H[i] += 0.2 * std::abs(hbar) * kspread * Complex(unit(rng), unit(rng));
    }
    Eigen::VectorXcd F;
    double fn = residual(H, F);
    bool ok = false;
    for (int it = 0; it < options.max_iterations && std::isfinite(fn); ++it) {
      const Eigen::VectorXcd step = jacobian(H).fullPivLu().solve(-F);
      if (!step.allFinite()) break;
      for (int i = 0; i < n; ++i) H[i] += step[i];
      fn = residual(H, F);
      if (fn <= 1e-14 * fscale) {
        ok = true;
        break;
      }
    }
    if (!ok && fn <= 1e-11 * fscale) ok = true;
    if (!ok) continue;
    ++res.converged_starts;
    double hs = 1.0;
    for (const auto& h : H) hs = std::max(hs, std::abs(h));
    auto& bucket =
        cyclicity(lax_matrices(initial_point(H, model)).Y) > options.cyclic_threshold ? res.solutions : res.rejected;
    const bool seen = std::any_of(bucket.begin(), bucket.end(), [&](const std::vector<Complex>& o) {
      for (int i = 0; i < n; ++i)
        if (std::abs(o[i] - H[i]) > options.dedup_tolerance * hs) return false;
      return true;
    });
    if (!seen) bucket.push_back(H);
  }
  auto lexical = [](const auto& a, const auto& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
      if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
  };
  std::sort(res.solutions.begin(), res.solutions.end(), lexical);
  std::sort(res.rejected.begin(), res.rejected.end(), lexical);
  res.undercoverage = res.solutions.size() < res.sector_dimension;
  return res;
}

double compare_solution_sets(const std::vector<std::vector<Complex>>& a, const std::vector<std::vector<Complex>>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t m = a.size();
  std::vector<std::vector<double>> dist(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (a[i].size() != b[j].size()) return std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < a[i].size(); ++c) dist[i][j] = std::max(dist[i][j], std::abs(a[i][c] - b[j][c]));
    }
  if (m > 8) {
    // greedy pairing beyond desk scale
    std::vector<bool> used(m, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t best = m;
      for (std::size_t j = 0; j < m; ++j)
        if (!used[j] && (best == m || dist[i][j] < dist[i][best])) best = j;
      used[best] = true;
      worst = std::max(worst, dist[i][best]);
    }
    return worst;
  }
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, dist[i][perm[i]]);
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

VelocityResult velocity_check(const JointState& state, const GaudinModel& model, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("velocity_check: delta must be positive");
  const int n = model.n();
  const auto& x = model.marked_points();
  double spacing = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) spacing = std::min(spacing, std::abs(x[i] - x[j]));

  auto attached_roots = [&](double t2) {
    const TimeVector t(model.hbar(), {0.0, t2});
    const auto rec = tau_eigenvalue(master_chain(t, model), exp_prefactor(t, model), state.vector, model);
    const auto match = poly::match_min_cost(x, rec.roots);
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) {
      out[i] = rec.roots[match[i]];
      if (std::abs(out[i] - x[i]) > 0.25 * spacing)
        throw ConvergenceError("velocity_check: root attached to x_" + std::to_string(i) + " moved " +
                               std::to_string(std::abs(out[i] - x[i])) +
                               ", more than a quarter of the particle spacing; reduce delta");
    }
    return out;
  };
  const auto up = attached_roots(delta);
  const auto down = attached_roots(-delta);

  VelocityResult r;
  double scale = 1e-300;
  for (const auto& h : state.H) scale = std::max(scale, 2.0 * std::abs(h));
  for (int i = 0; i < n; ++i) {
    r.velocity.push_back((up[i] - down[i]) / (2.0 * delta));
    r.error.push_back(std::abs(model.hbar() * r.velocity.back() + 2.0 * state.H[i]) / scale);
    r.max_error = std::max(r.max_error, r.error.back());
  }
  return r;
}

Complex lax_tau(const CorrespondenceRecord& record, Complex x, const TimeVector& t, const GaudinModel& model) {
  const int n = model.n();
  Eigen::MatrixXcd X0 = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) X0(i, i) = model.marked_points()[i];
  return tau_determinant(x, t, X0, record.Y0, exp_prefactor(t, model));
}

}  // namespace gaudin
