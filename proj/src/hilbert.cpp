#include "gaudin/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gaudin {

GaudinModel::GaudinModel(int N, int n, Complex hbar, std::vector<Complex> marked_points, std::vector<Complex> twist,
                         double tolerance)
    : N_(N), n_(n), hbar_(hbar), x_(std::move(marked_points)), k_(std::move(twist)), tolerance_(tolerance) {
  if (N_ < 2) throw std::invalid_argument("GaudinModel: N must be at least 2");
  if (n_ < 0) throw std::invalid_argument("GaudinModel: n must be nonnegative");
  if (hbar_ == Complex{}) throw std::invalid_argument("GaudinModel: hbar must be nonzero");
  if (static_cast<int>(x_.size()) != n_) throw std::invalid_argument("GaudinModel: need exactly n marked points");
  if (static_cast<int>(k_.size()) != N_) throw std::invalid_argument("GaudinModel: need exactly N twist eigenvalues");
  if (!(tolerance_ > 0.0)) throw std::invalid_argument("GaudinModel: tolerance must be positive");
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (x_[i] == x_[j]) {
        std::ostringstream os;
        os << "GaudinModel: marked points must be pairwise distinct (x_" << i << " = x_" << j << ")";
        throw std::invalid_argument(os.str());
      }
  for (int a = 0; a < N_; ++a) {
    if (k_[a] == Complex{}) throw std::invalid_argument("GaudinModel: twist eigenvalues must be nonzero");
    for (int b = a + 1; b < N_; ++b)
      if (k_[a] == k_[b]) throw std::invalid_argument("GaudinModel: twist eigenvalues must be pairwise distinct");
  }
  dimension_ = 1;
  for (int i = 0; i < n_; ++i) dimension_ *= static_cast<std::size_t>(N_);
}

Eigen::MatrixXcd GaudinModel::twist_matrix() const {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(N_, N_);
  for (int a = 0; a < N_; ++a) g(a, a) = k_[a];
  return g;
}

Complex GaudinModel::twist_power_trace(int k) const {
  Complex s{};
  for (const auto& ka : k_) s += std::pow(ka, k);
  return s;
}

std::vector<int> GaudinModel::letters(std::size_t index) const {
  std::vector<int> w(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    w[i] = static_cast<int>(index % N_);
    index /= N_;
  }
  return w;
}

std::size_t GaudinModel::index_of(std::span<const int> letters) const {
  std::size_t idx = 0;
  for (int l : letters) idx = idx * N_ + static_cast<std::size_t>(l);
  return idx;
}

std::vector<int> GaudinModel::content(std::size_t index) const {
  std::vector<int> m(N_, 0);
  for (int i = 0; i < n_; ++i) {
    ++m[index % N_];
    index /= N_;
  }
  return m;
}

GaudinModel random_model(int N, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> x(n), k(N);
  for (int i = 0; i < n; ++i) x[i] = static_cast<double>(i) + jitter(rng);
  for (int a = 0; a < N; ++a) k[a] = 0.5 + 0.6 * a + 0.4 * unit(rng);
  const double hbar = 0.5 + 0.5 * unit(rng);
  return GaudinModel(N, n, hbar, std::move(x), std::move(k));
}

Operator identity_operator(const GaudinModel& model) {
  const auto d = static_cast<Eigen::Index>(model.dimension());
  return Operator::Identity(d, d);
}

namespace {
void check_slot(int slot, const GaudinModel& model) {
  if (slot < 0 || slot >= model.n()) throw std::out_of_range("slot index out of range");
}
}  // namespace

Operator slot_embed(const Eigen::MatrixXcd& g, int slot, const GaudinModel& model) {
  check_slot(slot, model);
  if (g.rows() != model.N() || g.cols() != model.N()) throw std::invalid_argument("slot_embed: g must be N x N");
  const auto d = model.dimension();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t col = 0; col < d; ++col) {
    auto w = model.letters(col);
    const int b = w[slot];
    for (int a = 0; a < model.N(); ++a) {
      if (g(a, b) == Complex{}) continue;
      w[slot] = a;
      out(static_cast<Eigen::Index>(model.index_of(w)), static_cast<Eigen::Index>(col)) += g(a, b);
    }
  }
  return out;
}

Operator elementary_in_slot(int a, int b, int slot, const GaudinModel& model) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(model.N(), model.N());
  e(a, b) = 1.0;
  return slot_embed(e, slot, model);
}

Operator permutation(int i, int j, const GaudinModel& model) {
  check_slot(i, model);
  check_slot(j, model);
  if (i == j) throw std::invalid_argument("permutation: slots must differ");
  const auto d = model.dimension();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t col = 0; col < d; ++col) {
    auto w = model.letters(col);
    std::swap(w[i], w[j]);
    out(static_cast<Eigen::Index>(model.index_of(w)), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return out;
}

Operator gaudin_hamiltonian(int i, const GaudinModel& model) {
  check_slot(i, model);
  const Complex hbar = model.hbar();
  Operator h = hbar * slot_embed(model.twist_matrix(), i, model);
  const auto& x = model.marked_points();
  for (int j = 0; j < model.n(); ++j) {
    if (j == i) continue;
    h += (hbar * hbar / (x[i] - x[j])) * permutation(i, j, model);
  }
  return h;
}

Operator charge(int a, const GaudinModel& model) {
  if (a < 0 || a >= model.N()) throw std::out_of_range("charge: letter out of range");
  const auto d = model.dimension();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t idx = 0; idx < d; ++idx)
    out(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = static_cast<double>(model.content(idx)[a]);
  return out;
}

namespace {
void compositions(int remaining, int part, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  const int N = static_cast<int>(current.size());
  if (part == N - 1) {
    current[part] = remaining;
    out.push_back(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[part] = v;
    compositions(remaining - v, part + 1, current, out);
  }
}
}  // namespace

std::vector<std::vector<int>> sectors(const GaudinModel& model) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(model.N(), 0);
  compositions(model.n(), 0, current, out);
  return out;
}

std::vector<std::size_t> sector_basis(std::span<const int> m, const GaudinModel& model) {
  if (static_cast<int>(m.size()) != model.N()) throw std::invalid_argument("sector_basis: content needs N entries");
  int total = 0;
  for (int v : m) {
    if (v < 0) throw std::invalid_argument("sector_basis: negative multiplicity");
    total += v;
  }
  if (total != model.n()) throw std::invalid_argument("sector_basis: content must sum to n");
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < model.dimension(); ++idx) {
    const auto c = model.content(idx);
    if (std::equal(c.begin(), c.end(), m.begin())) out.push_back(idx);
  }
  return out;
}

std::size_t multinomial(std::span<const int> m) {
  std::size_t result = 1;
  int running = 0;
  for (int v : m)
    for (int j = 1; j <= v; ++j) {
      ++running;
      result = result * static_cast<std::size_t>(running) / static_cast<std::size_t>(j);
    }
  return result;
}

namespace {

Operator restrict_to(const Operator& op, const std::vector<std::size_t>& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  Operator out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      out(r, c) = op(static_cast<Eigen::Index>(basis[r]), static_cast<Eigen::Index>(basis[c]));
  return out;
}

struct SectorResult {
  std::vector<JointState> states;
  bool ok = false;
  double worst = 0.0;
};

SectorResult diagonalize_sector(const std::vector<Operator>& hs, const std::vector<double>& coeffs,
                                const std::vector<std::size_t>& basis, const std::vector<int>& m,
                                const GaudinModel& model) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  Operator combo = Operator::Zero(d, d);
  for (std::size_t i = 0; i < hs.size(); ++i) combo += coeffs[i] * hs[i];
  if (hs.empty()) combo = Operator::Identity(d, d);
  double scale = 1.0;
  for (const auto& h : hs) scale = std::max(scale, h.norm());

  Eigen::ComplexEigenSolver<Operator> solver(combo);
  SectorResult result;
  result.ok = true;
  for (Eigen::Index col = 0; col < d; ++col) {
    StateVector v = solver.eigenvectors().col(col);
    v.normalize();
    JointState state;
    state.m = m;
    double residual = 0.0;
    for (const auto& h : hs) {
      const StateVector hv = h * v;
      const Complex value = v.dot(hv);
      state.H.push_back(value);
      residual = std::max(residual, (hv - value * v).norm() / scale);
    }
    state.residual = residual;
    result.worst = std::max(result.worst, residual);
    if (residual > model.tolerance()) result.ok = false;
    StateVector full = StateVector::Zero(static_cast<Eigen::Index>(model.dimension()));
    for (Eigen::Index r = 0; r < d; ++r) full(static_cast<Eigen::Index>(basis[r])) = v(r);
    state.vector = std::move(full);
    // merge into an existing joint eigenspace when every H value agrees
    bool merged = false;
    for (auto& other : result.states) {
      double diff = 0.0;
      for (std::size_t i = 0; i < state.H.size(); ++i) diff = std::max(diff, std::abs(other.H[i] - state.H[i]));
      if (diff <= model.tolerance() * scale) {
        ++other.multiplicity;
        other.residual = std::max(other.residual, state.residual);
        merged = true;
        break;
      }
    }
    if (!merged) result.states.push_back(std::move(state));
  }
  return result;
}

}  // namespace

JointSpectrum joint_diagonalize(const GaudinModel& model, const DiagonalizeOptions& options) {
  std::vector<Operator> full_h;
  for (int i = 0; i < model.n(); ++i) full_h.push_back(gaudin_hamiltonian(i, model));
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coef(0.5, 1.5);

  JointSpectrum spectrum;
  for (const auto& m : sectors(model)) {
    const auto basis = sector_basis(m, model);
    std::vector<Operator> hs;
    for (const auto& h : full_h) hs.push_back(restrict_to(h, basis));
    SectorResult best;
    bool done = false;
    for (int attempt = 0; attempt <= options.max_retries && !done; ++attempt) {
      std::vector<double> c(model.n());
      for (auto& v : c) v = coef(rng) * (rng() % 2 ? 1.0 : -1.0);
      auto result = diagonalize_sector(hs, c, basis, m, model);
      done = result.ok;
      if (done || attempt == 0 || result.worst < best.worst) best = std::move(result);
    }
    if (!done) {
      std::ostringstream os;
      os << "joint_diagonalize: sector (";
      for (std::size_t a = 0; a < m.size(); ++a) os << (a ? "," : "") << m[a];
      os << ") residual " << best.worst << " exceeds tolerance " << model.tolerance() << " after "
         << options.max_retries + 1 << " random combinations";
      throw ConvergenceError(os.str());
    }
    for (auto& s : best.states) spectrum.states.push_back(std::move(s));
  }
  return spectrum;
}

}  // namespace gaudin
