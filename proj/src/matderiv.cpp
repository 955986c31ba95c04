#include "gaudin/matderiv.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace gaudin {

MatrixFunction MatrixFunction::constant(Complex c) {
  MatrixFunction f;
  f.scale_ = c;
  return f;
}

MatrixFunction MatrixFunction::character(YoungDiagram lam) {
  MatrixFunction f;
  f.factors_.emplace_back(Character{std::move(lam)});
  return f;
}

MatrixFunction MatrixFunction::exp_times(TimeVector t) {
  MatrixFunction f;
  f.factors_.emplace_back(ExpTimes{std::move(t)});
  return f;
}

MatrixFunction MatrixFunction::det_factor(Complex z, int exponent) {
  if (exponent != 1 && exponent != -1) throw std::invalid_argument("det_factor: exponent must be +1 or -1");
  MatrixFunction f;
  f.factors_.emplace_back(DetFactor{z, exponent});
  return f;
}

MatrixFunction MatrixFunction::power_trace(int k, int power) {
  if (k < 1 || power < 0) throw std::invalid_argument("power_trace: need k >= 1 and power >= 0");
  MatrixFunction f;
  f.factors_.emplace_back(PowerTrace{k, power});
  return f;
}

MatrixFunction& MatrixFunction::operator*=(const MatrixFunction& o) {
  scale_ *= o.scale_;
  factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end());
  return *this;
}

MatrixFunction& MatrixFunction::operator*=(Complex s) {
  scale_ *= s;
  return *this;
}

int MatrixFunction::trace_order(int N) const {
  int order = 0;
  for (const auto& factor : factors_) {
    std::visit(
        [&](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, Character>)
            order = std::max(order, f.lam.jacobi_trudi_order());
          else if constexpr (std::is_same_v<F, ExpTimes>)
            order = std::max(order, f.t.order());
          else if constexpr (std::is_same_v<F, DetFactor>)
            order = std::max(order, N);
          else
            order = std::max(order, f.k);
        },
        factor);
  }
  return order;
}

namespace {
SquareMatrix<Complex> to_square(const Eigen::MatrixXcd& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("matrix function: argument must be square");
  SquareMatrix<Complex> m(static_cast<int>(g.rows()), 0.0);
  for (int r = 0; r < m.size(); ++r)
    for (int c = 0; c < m.size(); ++c) m(r, c) = g(r, c);
  return m;
}

SquareMatrix<Jet> to_jets(const Eigen::MatrixXcd& g, int variables) {
  SquareMatrix<Jet> m(static_cast<int>(g.rows()), Jet(variables, 0.0));
  for (int r = 0; r < m.size(); ++r)
    for (int c = 0; c < m.size(); ++c) m(r, c) = Jet(variables, g(r, c));
  return m;
}
}  // namespace

Complex MatrixFunction::evaluate(const Eigen::MatrixXcd& g) const {
  return evaluate(to_square(g), Complex(1.0));
}

Eigen::MatrixXcd matrix_derivative(const MatrixFunction& f, const Eigen::MatrixXcd& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("matrix_derivative: argument must be square");
  const int N = static_cast<int>(g.rows());
  Eigen::MatrixXcd d(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      auto m = to_jets(g, 1);
      m(b, a) += Jet::variable(1, 0);
      d(a, b) = f.evaluate(m, Jet(1, 1.0))[1];
    }
  return d;
}

Operator iterated_derivative(const MatrixFunction& f, std::span<const int> slots, const Eigen::MatrixXcd& g,
                             const GaudinModel& model) {
  const int k = static_cast<int>(slots.size());
  std::vector<bool> used(model.n(), false);
  for (int s : slots) {
    if (s < 0 || s >= model.n()) throw std::out_of_range("iterated_derivative: slot out of range");
    if (used[s]) throw std::invalid_argument("iterated_derivative: repeated slot");
    used[s] = true;
  }
  const auto d = model.dimension();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::vector<std::vector<int>> words(d);
  for (std::size_t i = 0; i < d; ++i) words[i] = model.letters(i);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const auto& alpha = words[r];
      const auto& beta = words[c];
      bool compatible = true;
      for (int i = 0; i < model.n() && compatible; ++i)
        if (!used[i] && alpha[i] != beta[i]) compatible = false;
      if (!compatible) continue;
      auto m = to_jets(g, k);
      for (int j = 0; j < k; ++j) m(beta[slots[j]], alpha[slots[j]]) += Jet::variable(k, j);
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = f.evaluate(m, Jet(k, 1.0)).top();
    }
  return out;
}

ChainExpansion::ChainExpansion(std::shared_ptr<const Layout> layout, std::vector<Complex> coefficients)
    : layout_(std::move(layout)), coeff_(std::move(coefficients)) {}

namespace {
/// prod_{i not in S} (x - x_i) for every subset mask S.
std::vector<Complex> complement_weights(Complex x, const std::vector<Complex>& points) {
  const int n = static_cast<int>(points.size());
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Complex> w(subsets, 1.0);
  for (std::size_t s = 0; s < subsets; ++s)
    for (int i = 0; i < n; ++i)
      if (!(s & (std::size_t{1} << i))) w[s] *= (x - points[i]);
  return w;
}
}  // namespace

Operator ChainExpansion::evaluate(Complex x) const {
  const auto& L = *layout_;
  const std::size_t subsets = std::size_t{1} << L.n;
  const auto w = complement_weights(x, L.marked_points);
  const auto d = static_cast<Eigen::Index>(L.dimension);
  Operator out = Operator::Zero(d, d);
  for (std::size_t p = 0; p < L.rows.size(); ++p) {
    Complex acc{};
    const Complex* c = &coeff_[p * subsets];
    for (std::size_t s = 0; s < subsets; ++s) acc += w[s] * c[s];
    out(static_cast<Eigen::Index>(L.rows[p]), static_cast<Eigen::Index>(L.cols[p])) = acc;
  }
  return out;
}

Operator ChainExpansion::subset_operator(unsigned mask) const {
  const auto& L = *layout_;
  const std::size_t subsets = std::size_t{1} << L.n;
  if (mask >= subsets) throw std::out_of_range("subset_operator: mask out of range");
  const auto d = static_cast<Eigen::Index>(L.dimension);
  Operator out = Operator::Zero(d, d);
  for (std::size_t p = 0; p < L.rows.size(); ++p)
    out(static_cast<Eigen::Index>(L.rows[p]), static_cast<Eigen::Index>(L.cols[p])) = coeff_[p * subsets + mask];
  return out;
}

poly::Poly ChainExpansion::expectation(const StateVector& v) const {
  const auto& L = *layout_;
  const std::size_t subsets = std::size_t{1} << L.n;
  std::vector<Complex> s(subsets, Complex{});
  for (std::size_t p = 0; p < L.rows.size(); ++p) {
    const Complex weight = std::conj(v(static_cast<Eigen::Index>(L.rows[p]))) * v(static_cast<Eigen::Index>(L.cols[p]));
    if (weight == Complex{}) continue;
    const Complex* c = &coeff_[p * subsets];
    for (std::size_t m = 0; m < subsets; ++m) s[m] += weight * c[m];
  }
  const double norm2 = v.squaredNorm();
  poly::Poly out(static_cast<std::size_t>(L.n) + 1, Complex{});
  for (std::size_t m = 0; m < subsets; ++m) {
    if (s[m] == Complex{}) continue;
    std::vector<Complex> roots;
    for (int i = 0; i < L.n; ++i)
      if (!(m & (std::size_t{1} << i))) roots.push_back(L.marked_points[i]);
    const auto factor = poly::from_roots(roots);
    for (std::size_t j = 0; j < factor.size(); ++j) out[j] += s[m] / norm2 * factor[j];
  }
  return out;
}

std::vector<ChainExpansion> expand_chain(const GaudinModel& model, const JetFunction& f, int outputs,
                                         const ChainOptions& options) {
  const int n = model.n();
  const int N = model.N();
  std::vector<int> order = options.slot_order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(n);
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) throw std::invalid_argument("expand_chain: slot_order must be a permutation of 0..n-1");
  }

  const auto d = model.dimension();
  std::vector<std::vector<int>> words(d), contents(d);
  for (std::size_t i = 0; i < d; ++i) {
    words[i] = model.letters(i);
    contents[i] = model.content(i);
  }

  auto layout = std::make_shared<ChainExpansion::Layout>();
  layout->n = n;
  layout->dimension = d;
  layout->marked_points = model.marked_points();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (!options.restrict_to_sectors || contents[r] == contents[c]) {
        layout->rows.push_back(r);
        layout->cols.push_back(c);
      }

  const std::size_t subsets = std::size_t{1} << n;
  const std::size_t pairs = layout->rows.size();
  // jet variable mask -> slot mask
  std::vector<std::size_t> slot_mask(subsets, 0);
  for (std::size_t v = 0; v < subsets; ++v)
    for (int j = 0; j < n; ++j)
      if (v & (std::size_t{1} << j)) slot_mask[v] |= std::size_t{1} << order[j];
  std::vector<Complex> hbar_power(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) hbar_power[k] = hbar_power[k - 1] * model.hbar();

  std::vector<std::vector<Complex>> coeff(outputs, std::vector<Complex>(pairs * subsets, Complex{}));
  const auto g0 = model.twist_matrix();
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto& alpha = words[layout->rows[p]];
    const auto& beta = words[layout->cols[p]];
    std::size_t differ = 0;
    for (int i = 0; i < n; ++i)
      if (alpha[i] != beta[i]) differ |= std::size_t{1} << i;
    SquareMatrix<Jet> g(N, Jet(n, 0.0));
    for (int a = 0; a < N; ++a) g(a, a) = Jet(n, g0(a, a));
    for (int j = 0; j < n; ++j) {
      const int slot = order[j];
      g(beta[slot], alpha[slot]) += Jet::variable(n, j);
    }
    const auto values = f(g);
    if (static_cast<int>(values.size()) != outputs)
      throw std::logic_error("expand_chain: jet function returned the wrong number of outputs");
    for (int o = 0; o < outputs; ++o)
      for (std::size_t v = 0; v < subsets; ++v) {
        const std::size_t s = slot_mask[v];
        if ((s & differ) != differ) continue;
        coeff[o][p * subsets + s] = hbar_power[std::popcount(s)] * values[o][v];
      }
  }

  std::vector<ChainExpansion> out;
  out.reserve(outputs);
  for (int o = 0; o < outputs; ++o) out.emplace_back(layout, std::move(coeff[o]));
  return out;
}

ChainExpansion expand_chain(const GaudinModel& model, const MatrixFunction& f, const ChainOptions& options) {
  const int n = model.n();
  JetFunction jf = [&f, n](const SquareMatrix<Jet>& g) { return std::vector<Jet>{f.evaluate(g, Jet(n, 1.0))}; };
  return std::move(expand_chain(model, jf, 1, options).front());
}

Operator apply_factor_chain(const MatrixFunction& f, Complex x, const GaudinModel& model,
                            const ChainOptions& options) {
  return expand_chain(model, f, options).evaluate(x);
}

}  // namespace gaudin
