#include "gns/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <tuple>

#include "gns/errors.hpp"

namespace gns {

// ---------------------------------------------------------------------------
// CoefficientVector

CoefficientVector::CoefficientVector(int cutoff, std::vector<double> values)
    : cutoff_(cutoff), values_(std::move(values)) {}

CoefficientVector CoefficientVector::zeros(const BasisSet& basis) {
  return CoefficientVector(basis.cutoff(), std::vector<double>(basis.size(), 0.0));
}

bool CoefficientVector::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {
void require_same_shape(const CoefficientVector& a, const CoefficientVector& b) {
  if (a.cutoff() != b.cutoff() || a.size() != b.size()) {
    throw DimensionError("coefficient vectors belong to different bases");
  }
}
}  // namespace

CoefficientVector& CoefficientVector::operator+=(const CoefficientVector& other) {
  require_same_shape(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

CoefficientVector& CoefficientVector::operator-=(const CoefficientVector& other) {
  require_same_shape(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

CoefficientVector& CoefficientVector::operator*=(double alpha) {
  for (double& v : values_) v *= alpha;
  return *this;
}

CoefficientVector operator+(CoefficientVector a, const CoefficientVector& b) { return a += b; }
CoefficientVector operator-(CoefficientVector a, const CoefficientVector& b) { return a -= b; }
CoefficientVector operator*(double alpha, CoefficientVector c) { return c *= alpha; }

void require_matches(const BasisSet& basis, const CoefficientVector& c) {
  if (c.cutoff() != basis.cutoff() || c.size() != basis.size()) {
    throw DimensionError("state of length " + std::to_string(c.size()) + " (cutoff " +
                         std::to_string(c.cutoff()) + ") does not match basis of " +
                         std::to_string(basis.size()) + " modes (cutoff " +
                         std::to_string(basis.cutoff()) + ")");
  }
}

double dot(const CoefficientVector& a, const CoefficientVector& b) {
  require_same_shape(a, b);
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double GridField::cell_volume() const {
  const double h = 2.0 * std::numbers::pi / resolution;
  return h * h * h;
}

// ---------------------------------------------------------------------------
// GridTransform

GridTransform::GridTransform(const BasisSet& basis, int resolution)
    : basis_(&basis), resolution_(resolution), width_(2 * basis.cutoff() + 1) {
  if (resolution < width_) {
    throw ResolutionError("grid resolution " + std::to_string(resolution) +
                          " < 2*cutoff+1 = " + std::to_string(width_));
  }
  const int K = basis.cutoff();
  const double h = 2.0 * std::numbers::pi / resolution;
  phase_.resize(static_cast<std::size_t>(resolution) * width_);
  for (int l = 0; l < resolution; ++l) {
    for (int k = -K; k <= K; ++k) {
      const int q = ((k * l) % resolution + resolution) % resolution;
      phase_[static_cast<std::size_t>(l) * width_ + (k + K)] = std::polar(1.0, h * q);
    }
  }
}

std::vector<GridTransform::cplx> GridTransform::spectrum(const CoefficientVector& c) const {
  require_matches(*basis_, c);
  const int K = basis_->cutoff();
  const std::size_t w = width_;
  std::vector<cplx> spec(w * w * w * 3, cplx{});
  const double A = mode_amplitude();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0.0) continue;
    const BasisMode& mode = (*basis_)[j];
    const IVec3& k = mode.index.k;
    const std::size_t s = ((k[0] + K) * w + (k[1] + K)) * w + (k[2] + K);
    // cos θ = Re e^{iθ}, sin θ = Re(−i e^{iθ})
    const cplx factor = mode.index.parity == Parity::Cosine ? cplx{A * c[j], 0.0} : cplx{0.0, -A * c[j]};
    for (int b = 0; b < 3; ++b) spec[s * 3 + b] += factor * mode.polarization_vector[b];
  }
  return spec;
}

GridField GridTransform::synthesize(const std::vector<cplx>& spec, int components) const {
  const std::size_t w = width_;
  const std::size_t M = resolution_;
  const std::size_t nc = components;

  // z: [kx][ky][kz][c] -> [kx][ky][iz][c]
  std::vector<cplx> t1(w * w * M * nc, cplx{});
  for (std::size_t ab = 0; ab < w * w; ++ab)
    for (std::size_t iz = 0; iz < M; ++iz) {
      cplx* out = &t1[(ab * M + iz) * nc];
      const cplx* ph = &phase_[iz * w];
      for (std::size_t kz = 0; kz < w; ++kz) {
        const cplx* in = &spec[(ab * w + kz) * nc];
        for (std::size_t c = 0; c < nc; ++c) out[c] += in[c] * ph[kz];
      }
    }
  // y: [kx][ky][iz][c] -> [kx][iy][iz][c]
  std::vector<cplx> t2(w * M * M * nc, cplx{});
  for (std::size_t kx = 0; kx < w; ++kx)
    for (std::size_t iy = 0; iy < M; ++iy) {
      const cplx* ph = &phase_[iy * w];
      cplx* out = &t2[(kx * M + iy) * M * nc];
      for (std::size_t ky = 0; ky < w; ++ky) {
        const cplx* in = &t1[(kx * w + ky) * M * nc];
        const cplx p = ph[ky];
        for (std::size_t q = 0; q < M * nc; ++q) out[q] += in[q] * p;
      }
    }
  // x: [kx][iy][iz][c] -> real [ix][iy][iz][c]
  GridField grid;
  grid.resolution = resolution_;
  grid.cutoff = basis_->cutoff();
  grid.components = components;
  grid.values.assign(M * M * M * nc, 0.0);
  for (std::size_t ix = 0; ix < M; ++ix) {
    const cplx* ph = &phase_[ix * w];
    double* out = &grid.values[ix * M * M * nc];
    for (std::size_t kx = 0; kx < w; ++kx) {
      const cplx* in = &t2[kx * M * M * nc];
      const cplx p = ph[kx];
      for (std::size_t q = 0; q < M * M * nc; ++q) {
        out[q] += in[q].real() * p.real() - in[q].imag() * p.imag();
      }
    }
  }
  return grid;
}

GridField GridTransform::velocity(const CoefficientVector& c) const { return synthesize(spectrum(c), 3); }

GridField GridTransform::gradient(const CoefficientVector& c) const {
  const std::vector<cplx> spec = spectrum(c);
  const int K = basis_->cutoff();
  const std::size_t w = width_;
  std::vector<cplx> grad(w * w * w * 9, cplx{});
  for (int kx = -K; kx <= K; ++kx)
    for (int ky = -K; ky <= K; ++ky)
      for (int kz = -K; kz <= K; ++kz) {
        const std::size_t s = ((kx + K) * w + (ky + K)) * w + (kz + K);
        const int k[3] = {kx, ky, kz};
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) grad[s * 9 + a * 3 + b] = cplx{0.0, double(k[a])} * spec[s * 3 + b];
      }
  return synthesize(grad, 9);
}

CoefficientVector GridTransform::project(const GridField& u) const {
  if (u.resolution != resolution_ || u.components != 3) {
    throw DimensionError("project: grid does not match transform resolution");
  }
  const std::size_t w = width_;
  const std::size_t M = resolution_;
  const int K = basis_->cutoff();

  // x: [ix][iy][iz][c] -> [kx][iy][iz][c]
  std::vector<cplx> g1(w * M * M * 3, cplx{});
  for (std::size_t kx = 0; kx < w; ++kx) {
    cplx* out = &g1[kx * M * M * 3];
    for (std::size_t ix = 0; ix < M; ++ix) {
      const cplx p = std::conj(phase_[ix * w + kx]);
      const double* in = &u.values[ix * M * M * 3];
      for (std::size_t q = 0; q < M * M * 3; ++q) out[q] += in[q] * p;
    }
  }
  // y: -> [kx][ky][iz][c]
  std::vector<cplx> g2(w * w * M * 3, cplx{});
  for (std::size_t kx = 0; kx < w; ++kx)
    for (std::size_t ky = 0; ky < w; ++ky) {
      cplx* out = &g2[(kx * w + ky) * M * 3];
      for (std::size_t iy = 0; iy < M; ++iy) {
        const cplx p = std::conj(phase_[iy * w + ky]);
        const cplx* in = &g1[(kx * M + iy) * M * 3];
        for (std::size_t q = 0; q < M * 3; ++q) out[q] += in[q] * p;
      }
    }
  // z: -> [kx][ky][kz][c], scaled to F_k = M⁻³ Σ u e^{-ik·x}
  const double inv = 1.0 / static_cast<double>(M * M * M);
  std::vector<cplx> F(w * w * w * 3, cplx{});
  for (std::size_t ab = 0; ab < w * w; ++ab)
    for (std::size_t kz = 0; kz < w; ++kz) {
      cplx* out = &F[(ab * w + kz) * 3];
      for (std::size_t iz = 0; iz < M; ++iz) {
        const cplx p = std::conj(phase_[iz * w + kz]);
        const cplx* in = &g2[(ab * M + iz) * 3];
        for (int c = 0; c < 3; ++c) out[c] += in[c] * p;
      }
      for (int c = 0; c < 3; ++c) out[c] *= inv;
    }

  // (u, A e cos k·x) = A V e·Re F_k,  (u, A e sin k·x) = −A V e·Im F_k
  const double scale = mode_amplitude() * box_volume();
  CoefficientVector c = CoefficientVector::zeros(*basis_);
  for (std::size_t j = 0; j < basis_->size(); ++j) {
    const BasisMode& mode = (*basis_)[j];
    const IVec3& k = mode.index.k;
    const std::size_t s = ((k[0] + K) * w + (k[1] + K)) * w + (k[2] + K);
    double acc = 0.0;
    for (int b = 0; b < 3; ++b) {
      const cplx f = F[s * 3 + b];
      acc += mode.polarization_vector[b] * (mode.index.parity == Parity::Cosine ? f.real() : -f.imag());
    }
    c[j] = scale * acc;
  }
  return c;
}

GridField to_grid(const BasisSet& basis, const CoefficientVector& c, int resolution) {
  return GridTransform(basis, resolution).velocity(c);
}

GridField to_grid_direct(const BasisSet& basis, const CoefficientVector& c, int resolution) {
  require_matches(basis, c);
  if (resolution < 2 * basis.cutoff() + 1) throw ResolutionError("to_grid_direct: under-resolved grid");
  const long M = resolution;
  const double h = 2.0 * std::numbers::pi / resolution;
  const double A = mode_amplitude();
  GridField grid{resolution, basis.cutoff(), 3, std::vector<double>(M * M * M * 3, 0.0)};
  long p = 0;
  for (long ix = 0; ix < M; ++ix)
    for (long iy = 0; iy < M; ++iy)
      for (long iz = 0; iz < M; ++iz, ++p) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
          const BasisMode& mode = basis[j];
          const IVec3& k = mode.index.k;
          const double theta = h * (k[0] * ix + k[1] * iy + k[2] * iz);
          const double psi = mode.index.parity == Parity::Cosine ? std::cos(theta) : std::sin(theta);
          for (int b = 0; b < 3; ++b) grid.values[p * 3 + b] += A * c[j] * psi * mode.polarization_vector[b];
        }
      }
  return grid;
}

void write_grid_binary(std::ostream& out, const GridField& grid) {
  out << grid.resolution << ',' << grid.cutoff << '\n';
  static_assert(sizeof(double) == 8);
  out.write(reinterpret_cast<const char*>(grid.values.data()),
            static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
}

GridField read_grid_binary(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("grid file: missing header");
  GridField grid;
  char comma = 0;
  std::istringstream hs(header);
  if (!(hs >> grid.resolution >> comma >> grid.cutoff) || comma != ',' || grid.resolution <= 0) {
    throw ConfigError("grid file: malformed header '" + header + "'");
  }
  grid.values.resize(grid.points() * 3);
  in.read(reinterpret_cast<char*>(grid.values.data()),
          static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(grid.values.size() * sizeof(double))) {
    throw ConfigError("grid file: truncated payload");
  }
  return grid;
}

void write_grid_csv(std::ostream& out, const GridField& grid) {
  out << "ix,iy,iz,ux,uy,uz\n";
  const int M = grid.resolution;
  char buf[160];
  std::size_t p = 0;
  for (int ix = 0; ix < M; ++ix)
    for (int iy = 0; iy < M; ++iy)
      for (int iz = 0; iz < M; ++iz, ++p) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g,%.17g\n", ix, iy, iz, grid.at(p, 0),
                      grid.at(p, 1), grid.at(p, 2));
        out << buf;
      }
}

// ---------------------------------------------------------------------------
// Norms

double norm_l2(const CoefficientVector& c) {
  double s = 0.0;
  for (double v : c.values()) s += v * v;
  return std::sqrt(s);
}

double norm_h1(const BasisSet& basis, const CoefficientVector& c) {
  require_matches(basis, c);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += basis[j].eigenvalue * c[j] * c[j];
  return std::sqrt(s);
}

int l4_resolution(int cutoff, double dealias_factor) {
  const int scaled = static_cast<int>(std::ceil(dealias_factor * (2 * cutoff + 1) - 1e-12));
  return std::max(scaled, 4 * cutoff + 1);
}

double norm_l4(const GridTransform& transform, const CoefficientVector& c) {
  if (transform.resolution() < 4 * transform.basis().cutoff() + 1) {
    throw ResolutionError("norm_l4: quartic quadrature needs resolution >= 4*cutoff+1");
  }
  const GridField u = transform.velocity(c);
  double s = 0.0;
  for (std::size_t p = 0; p < u.points(); ++p) {
    const double q = u.at(p, 0) * u.at(p, 0) + u.at(p, 1) * u.at(p, 1) + u.at(p, 2) * u.at(p, 2);
    s += q * q;
  }
  return std::pow(s * u.cell_volume(), 0.25);
}

double norm_l4(const BasisSet& basis, const CoefficientVector& c, double dealias_factor) {
  if (!(dealias_factor >= 1.5)) throw InvalidArgument("norm_l4: dealias factor must be >= 3/2");
  require_matches(basis, c);
  return norm_l4(GridTransform(basis, l4_resolution(basis.cutoff(), dealias_factor)), c);
}

// ---------------------------------------------------------------------------
// Initial conditions

namespace {

std::vector<IVec3> half_lattice_shells(int min_shell, int max_shell) {
  const int r = static_cast<int>(std::floor(std::sqrt(double(max_shell)))) + 1;
  std::vector<IVec3> ks;
  for (int x = -r; x <= r; ++x)
    for (int y = -r; y <= r; ++y)
      for (int z = -r; z <= r; ++z) {
        const IVec3 k{x, y, z};
        const int s = norm2(k);
        if (is_half_lattice(k) && s >= min_shell && s <= max_shell) ks.push_back(k);
      }
  std::sort(ks.begin(), ks.end(), [](const IVec3& a, const IVec3& b) {
    return std::make_tuple(norm2(a), a) < std::make_tuple(norm2(b), b);
  });
  return ks;
}

void normalize_to(CoefficientVector& c, double amplitude) {
  const double n = norm_l2(c);
  if (n > 0.0) c *= amplitude / n;
}

void set_mode(CoefficientVector& c, const BasisSet& basis, const IVec3& k, int p, Parity parity, double v) {
  const long j = basis.find(ModeIndex{k, p, parity});
  if (j >= 0) c[static_cast<std::size_t>(j)] = v;
}

CoefficientVector beltrami(const BeltramiSpec& spec, const BasisSet& basis) {
  if (spec.shell < 1) throw InvalidArgument("beltrami: shell must be >= 1");
  const std::vector<IVec3> ks = half_lattice_shells(spec.shell, spec.shell);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CoefficientVector c = CoefficientVector::zeros(basis);
  // Positive-helicity pair per wavevector: e1 cos − e2 sin and e1 sin + e2 cos,
  // both satisfying curl u = |k| u.
  for (const IVec3& k : ks) {
    const double a = normal(rng);
    const double b = normal(rng);
    set_mode(c, basis, k, 1, Parity::Cosine, a);
    set_mode(c, basis, k, 2, Parity::Sine, -a);
    set_mode(c, basis, k, 1, Parity::Sine, b);
    set_mode(c, basis, k, 2, Parity::Cosine, b);
  }
  if (norm_l2(c) == 0.0) {
    throw InvalidArgument("beltrami: no wavevector with |k|^2 = " + std::to_string(spec.shell) +
                          " inside cutoff " + std::to_string(basis.cutoff()));
  }
  normalize_to(c, spec.amplitude);
  return c;
}

CoefficientVector random_band(const RandomBandSpec& spec, const BasisSet& basis) {
  if (spec.max_shell < 1) throw InvalidArgument("random_band: max shell must be >= 1");
  const std::vector<IVec3> ks = half_lattice_shells(1, spec.max_shell);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CoefficientVector c = CoefficientVector::zeros(basis);
  for (const IVec3& k : ks) {
    for (int p = 1; p <= 2; ++p) {
      for (Parity parity : {Parity::Cosine, Parity::Sine}) set_mode(c, basis, k, p, parity, normal(rng));
    }
  }
  normalize_to(c, spec.amplitude);
  return c;
}

CoefficientVector taylor_green(const TaylorGreenSpec& spec, const BasisSet& basis) {
  // sin x cos y cos z = ¼ Σ sin(x + s1 y + s2 z),  cos x sin y cos z = ¼ Σ s1 sin(x + s1 y + s2 z)
  CoefficientVector c = CoefficientVector::zeros(basis);
  const double weight = spec.amplitude * 0.25 * mode_amplitude() * 0.5 * box_volume();
  for (int s1 : {-1, 1}) {
    for (int s2 : {-1, 1}) {
      const IVec3 k{1, s1, s2};
      const Vec3 v{1.0, double(-s1), 0.0};
      for (int p = 1; p <= 2; ++p) {
        const long j = basis.find(ModeIndex{k, p, Parity::Sine});
        const Vec3& e = basis[static_cast<std::size_t>(j)].polarization_vector;
        c[static_cast<std::size_t>(j)] = weight * (e[0] * v[0] + e[1] * v[1] + e[2] * v[2]);
      }
    }
  }
  return c;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

CoefficientVector project_initial(const InitialConditionSpec& spec, const BasisSet& basis) {
  return std::visit(
      overloaded{
          [&](const BeltramiSpec& s) { return beltrami(s, basis); },
          [&](const RandomBandSpec& s) { return random_band(s, basis); },
          [&](const TaylorGreenSpec& s) { return taylor_green(s, basis); },
          [&](const ExplicitSpec& s) {
            if (s.coefficients.size() != basis.size()) {
              throw DimensionError("explicit initial condition has " + std::to_string(s.coefficients.size()) +
                                   " coefficients, basis has " + std::to_string(basis.size()));
            }
            return CoefficientVector(basis.cutoff(), s.coefficients);
          },
      },
      spec);
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + s + "' in " + what);
  }
}

long long to_integer(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer '" + s + "' in " + what);
  }
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

InitialConditionSpec parse_initial_condition(const std::string& text, std::uint64_t default_seed) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  const std::vector<std::string> args = rest.empty() ? std::vector<std::string>{} : split(rest, ':');
  const std::string what = "initial condition '" + text + "'";

  if (kind == "taylor_green") {
    if (args.size() > 1) throw ConfigError("taylor_green takes at most one argument (amplitude)");
    return TaylorGreenSpec{args.empty() ? 1.0 : to_double(args[0], what)};
  }
  if (kind == "beltrami") {
    if (args.empty() || args.size() > 3) throw ConfigError("expected beltrami:SHELL[:SEED[:AMPLITUDE]]");
    BeltramiSpec s;
    s.shell = static_cast<int>(to_integer(args[0], what));
    s.seed = args.size() > 1 ? static_cast<std::uint64_t>(to_integer(args[1], what)) : default_seed;
    s.amplitude = args.size() > 2 ? to_double(args[2], what) : 1.0;
    if (s.shell < 1) throw ConfigError("beltrami shell must be >= 1");
    return s;
  }
  if (kind == "random_band") {
    if (args.size() < 2 || args.size() > 3) throw ConfigError("expected random_band:MAX_SHELL:AMPLITUDE[:SEED]");
    RandomBandSpec s;
    s.max_shell = static_cast<int>(to_integer(args[0], what));
    s.amplitude = to_double(args[1], what);
    s.seed = args.size() > 2 ? static_cast<std::uint64_t>(to_integer(args[2], what)) : default_seed;
    if (s.max_shell < 1) throw ConfigError("random_band max shell must be >= 1");
    return s;
  }
  if (kind == "explicit") {
    ExplicitSpec s;
    if (rest.empty()) throw ConfigError("explicit initial condition needs at least one coefficient");
    for (const std::string& v : split(rest, ',')) s.coefficients.push_back(to_double(v, what));
    return s;
  }
  throw ConfigError("unknown initial condition kind '" + kind + "'");
}

std::string to_string(const InitialConditionSpec& spec) {
  return std::visit(
      overloaded{
          [](const BeltramiSpec& s) {
            return "beltrami:" + std::to_string(s.shell) + ":" + std::to_string(s.seed) + ":" + fmt_double(s.amplitude);
          },
          [](const RandomBandSpec& s) {
            return "random_band:" + std::to_string(s.max_shell) + ":" + fmt_double(s.amplitude) + ":" +
                   std::to_string(s.seed);
          },
          [](const TaylorGreenSpec& s) { return "taylor_green:" + fmt_double(s.amplitude); },
          [](const ExplicitSpec& s) {
            std::string out = "explicit:";
            for (std::size_t j = 0; j < s.coefficients.size(); ++j) {
              if (j) out += ',';
              out += fmt_double(s.coefficients[j]);
            }
            return out;
          },
      },
      spec);
}

CoefficientVector embed(const BasisSet& from, const CoefficientVector& c, const BasisSet& to) {
  require_matches(from, c);
  CoefficientVector out = CoefficientVector::zeros(to);
  for (std::size_t j = 0; j < from.size(); ++j) {
    const long target = to.find(from[j].index);
    if (target >= 0) out[static_cast<std::size_t>(target)] = c[j];
  }
  return out;
}

CoefficientVector random_direction(const BasisSet& basis, std::uint64_t seed, double norm) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CoefficientVector c = CoefficientVector::zeros(basis);
  for (double& v : c.values()) v = normal(rng);
  normalize_to(c, norm);
  return c;
}

}  // namespace gns
