#include "interlacing/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "interlacing/error.hpp"
#include "numeric_detail.hpp"

namespace interlacing {

namespace {

constexpr double kDetPolyNoise = 1e-12;

// Drops leading coefficients that are rounding residue of exact zeros.
RealUniPoly numerical_part(const RealUniPoly& q) {
  std::vector<double> c = q.coeffs();
  double top = 0.0;
  for (double v : c) top = std::max(top, std::abs(v));
  while (!c.empty() && std::abs(c.back()) <= kDetPolyNoise * top) c.pop_back();
  return RealUniPoly(std::move(c));
}

std::size_t checked_grid(int nvars, int max_deg) {
  if (nvars < 0 || nvars > kMaxPolyVars) {
    throw Error(Errc::GridTooLarge, "at most " + std::to_string(kMaxPolyVars) + " variables supported");
  }
  if (max_deg < 0) throw Error(Errc::BadParameters, "negative degree bound");
  std::size_t size = 1;
  for (int v = 0; v < nvars; ++v) {
    size *= static_cast<std::size_t>(max_deg + 1);
    if (size > kMaxGridSize) throw Error(Errc::GridTooLarge, "coefficient grid exceeds 1e6 entries");
  }
  return size;
}

template <typename T>
T horner_eval(const std::vector<double>& coeffs, const std::vector<std::size_t>& stride, int max_deg,
              std::span<const T> point) {
  const int nv = static_cast<int>(point.size());
  std::vector<T> cur(coeffs.begin(), coeffs.end());
  for (int v = nv - 1; v >= 0; --v) {
    const std::size_t s = stride[static_cast<std::size_t>(v)];
    std::vector<T> next(s);
    for (std::size_t j = 0; j < s; ++j) {
      T acc = cur[j + static_cast<std::size_t>(max_deg) * s];
      for (int k = max_deg - 1; k >= 0; --k) acc = acc * point[static_cast<std::size_t>(v)] + cur[j + static_cast<std::size_t>(k) * s];
      next[j] = acc;
    }
    cur = std::move(next);
  }
  return cur.front();
}

}  // namespace

MultiPoly::MultiPoly(int nvars, int max_deg)
    : nvars_(nvars), max_deg_(max_deg), coeffs_(checked_grid(nvars, max_deg), 0.0) {
  stride_.resize(static_cast<std::size_t>(nvars));
  std::size_t s = 1;
  for (int v = 0; v < nvars; ++v) {
    stride_[static_cast<std::size_t>(v)] = s;
    s *= static_cast<std::size_t>(max_deg + 1);
  }
}

MultiPoly::MultiPoly(int nvars, int max_deg, std::vector<double> coeffs) : MultiPoly(nvars, max_deg) {
  if (coeffs.size() != coeffs_.size()) throw Error(Errc::LengthMismatch, "coefficient grid has the wrong size");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw Error(Errc::PreconditionFailed, "non-finite coefficient");
  }
  coeffs_ = std::move(coeffs);
}

MultiPoly MultiPoly::constant(double c) { return MultiPoly(0, 0, {c}); }

MultiPoly MultiPoly::variable(int nvars, int max_deg, int var) {
  MultiPoly p(nvars, std::max(max_deg, 1));
  p.check_var(var);
  p.coeffs_[p.stride_[static_cast<std::size_t>(var)]] = 1.0;
  return p;
}

MultiPoly MultiPoly::from_univariate(const RealUniPoly& q) {
  const int deg = std::max(q.degree(), 0);
  std::vector<double> c(static_cast<std::size_t>(deg + 1), 0.0);
  for (int k = 0; k <= q.degree(); ++k) c[static_cast<std::size_t>(k)] = q.coeff(k);
  return MultiPoly(1, deg, std::move(c));
}

void MultiPoly::check_var(int var) const {
  if (var < 0 || var >= nvars_) throw Error(Errc::BadIndex, "variable index " + std::to_string(var) + " out of range");
}

std::size_t MultiPoly::index(std::span<const int> e) const {
  if (static_cast<int>(e.size()) != nvars_) throw Error(Errc::LengthMismatch, "exponent tuple length");
  std::size_t idx = 0;
  for (int v = 0; v < nvars_; ++v) {
    const int ev = e[static_cast<std::size_t>(v)];
    if (ev < 0 || ev > max_deg_) throw Error(Errc::BadIndex, "exponent out of range");
    idx += static_cast<std::size_t>(ev) * stride_[static_cast<std::size_t>(v)];
  }
  return idx;
}

double MultiPoly::coeff(std::span<const int> exponents) const { return coeffs_[index(exponents)]; }

void MultiPoly::set_coeff(std::span<const int> exponents, double value) { coeffs_[index(exponents)] = value; }

double MultiPoly::scale() const noexcept {
  double s = 0.0;
  for (double c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

int MultiPoly::total_degree() const noexcept {
  int best = -1;
  const std::size_t base = static_cast<std::size_t>(max_deg_ + 1);
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    if (coeffs_[idx] == 0.0) continue;
    int deg = 0;
    std::size_t rest = idx;
    for (int v = 0; v < nvars_; ++v) {
      deg += static_cast<int>(rest % base);
      rest /= base;
    }
    best = std::max(best, deg);
  }
  return best;
}

Complex MultiPoly::eval(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw Error(Errc::LengthMismatch, "evaluation point length");
  return horner_eval<Complex>(coeffs_, stride_, max_deg_, point);
}

double MultiPoly::eval(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw Error(Errc::LengthMismatch, "evaluation point length");
  return horner_eval<double>(coeffs_, stride_, max_deg_, point);
}

MultiPoly MultiPoly::partial(int var) const {
  check_var(var);
  MultiPoly out(nvars_, max_deg_);
  const std::size_t s = stride_[static_cast<std::size_t>(var)];
  const std::size_t base = static_cast<std::size_t>(max_deg_ + 1);
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    const std::size_t e = (idx / s) % base;
    if (e < static_cast<std::size_t>(max_deg_)) out.coeffs_[idx] = static_cast<double>(e + 1) * coeffs_[idx + s];
  }
  return out;
}

MultiPoly MultiPoly::one_minus_partial(int var) const { return *this - partial(var); }

MultiPoly MultiPoly::restrict(int var, double a) const {
  check_var(var);
  MultiPoly out(nvars_ - 1, max_deg_);
  const std::size_t s = stride_[static_cast<std::size_t>(var)];
  const std::size_t base = static_cast<std::size_t>(max_deg_ + 1);
  std::vector<double> powers(base, 1.0);
  for (std::size_t k = 1; k < base; ++k) powers[k] = powers[k - 1] * a;
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    const std::size_t e = (idx / s) % base;
    const std::size_t lo = idx % s;
    const std::size_t hi = idx / (s * base);
    out.coeffs_[lo + hi * s] += coeffs_[idx] * powers[e];
  }
  return out;
}

RealUniPoly MultiPoly::along_line(std::span<const double> origin, std::span<const double> direction) const {
  if (static_cast<int>(origin.size()) != nvars_ || static_cast<int>(direction.size()) != nvars_) {
    throw Error(Errc::LengthMismatch, "line origin/direction length");
  }
  std::vector<RealUniPoly> cur;
  cur.reserve(coeffs_.size());
  for (double c : coeffs_) cur.push_back(RealUniPoly::constant(c));
  for (int v = nvars_ - 1; v >= 0; --v) {
    const std::size_t s = stride_[static_cast<std::size_t>(v)];
    const RealUniPoly lin({origin[static_cast<std::size_t>(v)], direction[static_cast<std::size_t>(v)]});
    std::vector<RealUniPoly> next(s);
    for (std::size_t j = 0; j < s; ++j) {
      RealUniPoly acc = cur[j + static_cast<std::size_t>(max_deg_) * s];
      for (int k = max_deg_ - 1; k >= 0; --k) acc = acc * lin + cur[j + static_cast<std::size_t>(k) * s];
      next[j] = std::move(acc);
    }
    cur = std::move(next);
  }
  return cur.front();
}

RealUniPoly MultiPoly::diagonal() const {
  const std::vector<double> zero(static_cast<std::size_t>(nvars_), 0.0);
  const std::vector<double> ones(static_cast<std::size_t>(nvars_), 1.0);
  return along_line(zero, ones);
}

RealUniPoly MultiPoly::to_univariate() const {
  if (nvars_ != 1) throw Error(Errc::BadIndex, "to_univariate needs exactly one variable");
  return RealUniPoly(coeffs_);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  if (rhs.nvars_ != nvars_ || rhs.max_deg_ != max_deg_) throw Error(Errc::DimensionMismatch, "grid shapes differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  if (rhs.nvars_ != nvars_ || rhs.max_deg_ != max_deg_) throw Error(Errc::DimensionMismatch, "grid shapes differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

MultiPoly& MultiPoly::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

MultiPoly det_poly(std::span<const HermitianMatrix> as, bool include_x) {
  if (as.empty() && !include_x) throw Error(Errc::DimensionMismatch, "det_poly needs at least one matrix");
  const Index d = as.empty() ? 0 : as.front().dim();
  if (d == 0) throw Error(Errc::DimensionMismatch, "det_poly needs the matrix dimension");
  for (const auto& a : as) {
    if (a.dim() != d) throw Error(Errc::DimensionMismatch, "det_poly matrices differ in dimension");
  }
  const int nv = static_cast<int>(as.size()) + (include_x ? 1 : 0);
  const int deg = static_cast<int>(d);
  MultiPoly out(nv, deg);
  std::vector<double> values(out.grid_size());
  const std::size_t base = static_cast<std::size_t>(deg + 1);

  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    MatrixC m = MatrixC::Zero(d, d);
    std::size_t rest = idx;
    for (int v = 0; v < nv; ++v) {
      const double node = static_cast<double>(rest % base);
      rest /= base;
      if (node == 0.0) continue;
      if (include_x && v == 0) {
        m.diagonal().array() += node;
      } else {
        m += node * as[static_cast<std::size_t>(v - (include_x ? 1 : 0))].matrix();
      }
    }
    values[idx] = m.partialPivLu().determinant().real();
  }

  // Tensor-product interpolation: transform each axis in turn.
  std::vector<double> line(base);
  std::size_t s = 1;
  for (int v = 0; v < nv; ++v) {
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      if ((idx / s) % base != 0) continue;
      for (std::size_t k = 0; k < base; ++k) line[k] = values[idx + k * s];
      detail::nodes_to_monomial(line);
      for (std::size_t k = 0; k < base; ++k) values[idx + k * s] = line[k];
    }
    s *= base;
  }

  // det is homogeneous of degree d; anything off that degree, or below the
  // interpolation noise, is an exact zero.
  double top = 0.0;
  for (double v : values) top = std::max(top, std::abs(v));
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    std::size_t rest = idx;
    int total = 0;
    for (int v = 0; v < nv; ++v) {
      total += static_cast<int>(rest % base);
      rest /= base;
    }
    if (total != deg || std::abs(values[idx]) <= kDetPolyNoise * top) values[idx] = 0.0;
  }
  return MultiPoly(nv, deg, std::move(values));
}

std::optional<std::vector<Complex>> stability_falsifier(const MultiPoly& p, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::BadParameters, "trials must be positive");
  const int nv = p.nvars();
  const double scale = p.scale();
  if (scale == 0.0) return std::vector<Complex>(static_cast<std::size_t>(nv), Complex{0.0, 1.0});
  if (nv == 0) return std::nullopt;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-10.0, 10.0);
  std::uniform_real_distribution<double> log_im(std::log(0.01), std::log(10.0));
  std::vector<double> a(static_cast<std::size_t>(nv)), b(static_cast<std::size_t>(nv));
  std::vector<Complex> z(static_cast<std::size_t>(nv));
  for (int trial = 0; trial < trials; ++trial) {
    for (int v = 0; v < nv; ++v) {
      a[static_cast<std::size_t>(v)] = re(rng);
      b[static_cast<std::size_t>(v)] = std::exp(log_im(rng));
    }
    const RealUniPoly q = p.along_line(a, b);
    if (q.degree() < 1 || is_real_rooted(q)) continue;
    const RealUniPoly dq = q.derivative();
    for (Complex t : roots(q)) {
      if (std::abs(t.imag()) <= kDefaultRealRootTol * (1.0 + std::abs(t))) continue;
      if (t.imag() < 0.0) t = std::conj(t);
      for (int it = 0; it < 8; ++it) {
        const Complex d = dq(t);
        if (std::abs(d) == 0.0) break;
        t -= q(t) / d;
      }
      if (!(t.imag() > 0.0)) continue;
      for (int v = 0; v < nv; ++v) z[static_cast<std::size_t>(v)] = a[static_cast<std::size_t>(v)] + t * b[static_cast<std::size_t>(v)];
      if (std::abs(p.eval(std::span<const Complex>(z))) <= 1e-10 * scale) return z;
    }
  }
  return std::nullopt;
}

bool above_roots_det_form(std::span<const HermitianMatrix> as, std::span<const double> z) {
  if (as.size() != z.size() || as.empty()) throw Error(Errc::LengthMismatch, "one coordinate per matrix");
  HermitianMatrix m = HermitianMatrix::zero(as.front().dim());
  for (std::size_t i = 0; i < as.size(); ++i) m += as[i] * z[i];
  const auto ev = eigenvalues(m);
  const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.front() > 1e-10 * std::max(1.0, norm);
}

bool above_roots_probe(const MultiPoly& p, std::span<const double> z, int rays, std::uint64_t seed,
                       std::span<const HermitianMatrix> det_form) {
  if (!det_form.empty()) return above_roots_det_form(det_form, z);
  const int nv = p.nvars();
  if (static_cast<int>(z.size()) != nv) throw Error(Errc::LengthMismatch, "probe point length");
  if (!(p.eval(z) > 0.0)) return false;

  std::vector<double> dir(static_cast<std::size_t>(nv), 0.0);
  for (int i = 0; i < nv; ++i) {
    std::fill(dir.begin(), dir.end(), 0.0);
    dir[static_cast<std::size_t>(i)] = 1.0;
    const RealUniPoly q = numerical_part(p.along_line(z, dir));
    if (q.degree() >= 1 && !(max_real_part(q) < 0.0)) return false;
  }

  double znorm = 0.0;
  for (double v : z) znorm += v * v;
  const double reach = 10.0 * (1.0 + std::sqrt(znorm));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> pt(static_cast<std::size_t>(nv));
  for (int r = 0; r < rays; ++r) {
    double len = 0.0;
    for (double& d : dir) {
      d = unit(rng);
      len += d * d;
    }
    len = std::sqrt(len);
    if (len == 0.0) continue;
    for (double& d : dir) d /= len;
    for (int k = 1; k <= 32; ++k) {
      const double t = reach * k / 32.0;
      for (int v = 0; v < nv; ++v) pt[static_cast<std::size_t>(v)] = z[static_cast<std::size_t>(v)] + t * dir[static_cast<std::size_t>(v)];
      if (!(p.eval(std::span<const double>(pt)) > 0.0)) return false;
    }
  }
  return true;
}

}  // namespace interlacing
