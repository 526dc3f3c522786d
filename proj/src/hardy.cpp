#include "szego/hardy.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "szego/liegroup.hpp"
#include "szego/quadrature.hpp"

namespace szego {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int gram_denominator(int N, int a) {
    mp::cpp_int c = 1;
    for (int j = 1; j <= a; ++j) c = c * (N - a + j) / j;
    return c * (N + 1);
}

}  // namespace

SectionSpace::SectionSpace(const ModelManifold& M, int k, std::int64_t max_dimension)
    : M_(M), k_(k) {
    if (k < 0) throw DomainError("SectionSpace: negative level");
    for (int p : M.weights()) {
        N_.push_back(k * p);
        total_ += k * p;
        if (dim_ > max_dimension / (k * p + 1))
            throw ResourceError("SectionSpace: dimension exceeds the configured cap");
        dim_ *= k * p + 1;
    }
    int d = M.factors();
    stride_.assign(d, 1);
    for (int i = d - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * (N_[i + 1] + 1);
    log_norm_.resize(d);
    for (int i = 0; i < d; ++i) {
        for (int a = 0; a <= N_[i]; ++a) {
            mp::cpp_bin_float_50 v(gram_denominator(N_[i], a));
            log_norm_[i].push_back(0.5 * static_cast<double>(mp::log(v)));
        }
    }
    blocks_.resize(total_ + 1);
    for (int j = 0; j <= total_; ++j) blocks_[j].weight = 2 * j - total_;
    pos_.resize(dim_);
    for (std::int64_t idx = 0; idx < dim_; ++idx) {
        auto& b = blocks_[(weight_of(idx) + total_) / 2];
        pos_[idx] = static_cast<int>(b.indices.size());
        b.indices.push_back(idx);
    }
}

std::vector<int> SectionSpace::exponents(std::int64_t index) const {
    std::vector<int> a(N_.size());
    for (std::size_t i = 0; i < N_.size(); ++i) {
        a[i] = static_cast<int>(index / stride_[i]);
        index %= stride_[i];
    }
    return a;
}

std::int64_t SectionSpace::index_of(const std::vector<int>& a) const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < N_.size(); ++i) {
        if (a[i] < 0 || a[i] > N_[i]) throw DomainError("SectionSpace: exponent out of range");
        idx += a[i] * stride_[i];
    }
    return idx;
}

int SectionSpace::weight_of(std::int64_t index) const {
    int w = 0;
    for (std::size_t i = 0; i < N_.size(); ++i) {
        int a = static_cast<int>(index / stride_[i]);
        index %= stride_[i];
        w += 2 * a - N_[i];
    }
    return w;
}

const SectionSpace::Block* SectionSpace::block(int weight) const {
    if (weight < -total_ || weight > total_ || (weight + total_) % 2 != 0) return nullptr;
    // Blocks are contiguous in weight with step 2.
    std::size_t j = static_cast<std::size_t>((weight + total_) / 2);
    if (j >= blocks_.size()) return nullptr;
    return &blocks_[j];
}

Rational SectionSpace::gram_entry(std::int64_t index) const {
    auto a = exponents(index);
    mp::cpp_int den = 1;
    for (std::size_t i = 0; i < N_.size(); ++i) den *= gram_denominator(N_[i], a[i]);
    return Rational(mp::cpp_int(1), den);
}

Eigen::VectorXcd SectionSpace::evaluate(const ManifoldPoint& x) const {
    Eigen::VectorXcd vals(1);
    vals(0) = std::polar(1.0, k_ * x.theta);
    for (std::size_t i = 0; i < N_.size(); ++i) {
        int N = N_[i];
        const Complex z0 = x.z.at(i)(0), z1 = x.z.at(i)(1);
        double l0 = std::log(std::abs(z0)), l1 = std::log(std::abs(z1));
        double p0 = std::arg(z0), p1 = std::arg(z1);
        Eigen::VectorXcd f(N + 1);
        for (int a = 0; a <= N; ++a) {
            double lm = log_norm_[i][a];
            if (a > 0) lm += a * l0;
            if (N - a > 0) lm += (N - a) * l1;
            f(a) = std::isinf(lm) ? Complex(0.0) : std::polar(std::exp(lm), a * p0 + (N - a) * p1);
        }
        Eigen::VectorXcd next(vals.size() * (N + 1));
        for (Eigen::Index j = 0; j < vals.size(); ++j) next.segment(j * (N + 1), N + 1) = vals(j) * f;
        vals = std::move(next);
    }
    return vals;
}

Eigen::MatrixXd SectionSpace::casimir_block(int weight) const {
    const Block* b = block(weight);
    if (!b) return {};
    const Block* up = block(weight + 2);
    Eigen::Index s = static_cast<Eigen::Index>(b->indices.size());
    Eigen::MatrixXd C = static_cast<double>(weight * weight + 2 * weight) * Eigen::MatrixXd::Identity(s, s);
    if (!up) return C;
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(up->indices.size()), s);
    for (Eigen::Index j = 0; j < s; ++j) {
        std::int64_t idx = b->indices[j];
        auto a = exponents(idx);
        for (std::size_t i = 0; i < N_.size(); ++i) {
            if (a[i] == N_[i]) continue;
            double c = std::sqrt((a[i] + 1.0) * (N_[i] - a[i]));
            E(pos_[idx + stride_[i]], j) += c;
        }
    }
    C.noalias() += 4.0 * E.transpose() * E;
    return C;
}

Eigen::MatrixXd IsotypeBasis::dense_coefficients(const SectionSpace& S) const {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(S.dimension(), static_cast<Eigen::Index>(dimension()));
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < V.size(); ++j) {
        const auto* b = S.block(block_weights[j]);
        for (Eigen::Index c = 0; c < V[j].cols(); ++c, ++col)
            for (Eigen::Index r = 0; r < V[j].rows(); ++r) D(b->indices[r], col) = V[j](r, c);
    }
    return D;
}

IsotypeBasis isotype_basis(const SectionSpace& S, int n) {
    IsotypeBasis B;
    B.weights = S.manifold().weights();
    B.k = S.k();
    B.n = n;
    B.multiplicity = multiplicity(S.manifold(), S.k(), n);
    if (B.multiplicity == 0) return B;
    const double target = n * (n + 2.0);
    for (int w = -n; w <= n; w += 2) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S.casimir_block(w));
        if (es.info() != Eigen::Success) throw ConvergenceError("isotype_basis: eigensolver failed");
        std::vector<Eigen::Index> cols;
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
            if (std::abs(es.eigenvalues()(j) - target) < 1.0) cols.push_back(j);
        if (cols.size() != B.multiplicity)
            throw ConvergenceError("isotype_basis: eigenspace dimension disagrees with multiplicity");
        Eigen::MatrixXd V(es.eigenvectors().rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            Eigen::VectorXd v = es.eigenvectors().col(cols[c]);
            double big = v.cwiseAbs().maxCoeff();
            for (Eigen::Index r = 0; r < v.size(); ++r)
                if (std::abs(v(r)) > 1e-8 * big) {
                    if (v(r) < 0) v = -v;
                    break;
                }
            V.col(static_cast<Eigen::Index>(c)) = v;
        }
        B.block_weights.push_back(w);
        B.V.push_back(std::move(V));
    }
    return B;
}

std::vector<std::uint64_t> multiplicities(const std::vector<int>& p, int k) {
    if (k < 0) throw DomainError("multiplicities: negative level");
    for (int w : p)
        if (w <= 0) throw DomainError("multiplicities: weights must be positive");
    using u128 = unsigned __int128;
    std::vector<u128> c(1, 1);  // c[j] = multiplicity of V_j
    for (int pi : p) {
        int N = k * pi;
        int top = static_cast<int>(c.size()) - 1 + N;
        std::vector<u128> diff(top + 3, 0), neg(top + 3, 0);
        for (int j = 0; j < static_cast<int>(c.size()); ++j) {
            if (c[j] == 0) continue;
            diff[std::abs(j - N)] += c[j];
            neg[j + N + 2] += c[j];
        }
        std::vector<u128> next(top + 1, 0);
        for (int m = 0; m <= top; ++m) {
            u128 v = diff[m] - neg[m] + (m >= 2 ? next[m - 2] : 0);
            if (v > std::numeric_limits<std::uint64_t>::max())
                throw ResourceError("multiplicities: value exceeds 64 bits");
            next[m] = v;
        }
        c = std::move(next);
    }
    return {c.begin(), c.end()};
}

std::uint64_t multiplicity(const std::vector<int>& weights, int k, int n) {
    if (n < 0) return 0;
    auto m = multiplicities(weights, k);
    return n < static_cast<int>(m.size()) ? m[n] : 0;
}

std::uint64_t isotype_dimension(const std::vector<int>& weights, int k, int n) {
    std::uint64_t m = multiplicity(weights, k, n), out = 0;
    if (__builtin_mul_overflow(m, static_cast<std::uint64_t>(n + 1), &out))
        throw ResourceError("isotype_dimension: value exceeds 64 bits");
    return out;
}

std::uint64_t multiplicity_by_weights(const std::vector<int>& weights, int k, int n) {
    int total = 0;
    for (int p : weights) total += k * p;
    if (n < 0 || n > total || (total - n) % 2) return 0;
    // count[j] = number of monomials with sum of a_i equal to j.
    std::vector<std::uint64_t> count(1, 1);
    for (int p : weights) {
        int N = k * p;
        std::vector<std::uint64_t> next(count.size() + N, 0);
        for (std::size_t j = 0; j < count.size(); ++j)
            for (int a = 0; a <= N; ++a) next[j + a] += count[j];
        count = std::move(next);
    }
    auto wt = [&](int w) -> std::uint64_t {
        if (w > total) return 0;
        return count[(w + total) / 2];
    };
    return wt(n) - wt(n + 2);
}

std::uint64_t multiplicity_by_characters(const std::vector<int>& weights, int k, int n) {
    int total = 0;
    for (int p : weights) total += k * p;
    if (n < 0) return 0;
    auto f = [&](double phi) -> Complex {
        double v = character(n, phi);
        for (int p : weights) v *= character(k * p, phi);
        return v;
    };
    double val = haar_integrate_class(f, n + total).real();
    double r = std::round(val);
    if (std::abs(val - r) > 1e-6 * std::max(1.0, std::abs(val)))
        throw ConvergenceError("multiplicity_by_characters: non-integral result");
    return static_cast<std::uint64_t>(std::max(r, 0.0));
}

Complex full_kernel(const SectionSpace& S, const ManifoldPoint& x, const ManifoldPoint& y) {
    Complex v = std::polar(1.0, S.k() * (x.theta - y.theta));
    for (std::size_t i = 0; i < S.degrees().size(); ++i) {
        int N = S.degrees()[i];
        Complex ip = x.z[i].dot(y.z[i]);  // conjugates the first argument
        v *= (N + 1.0) * std::pow(std::conj(ip), N);
    }
    return v;
}

Complex equivariant_kernel(const SectionSpace& S, const IsotypeBasis& B, const ManifoldPoint& x,
                           const ManifoldPoint& y) {
    if (B.multiplicity == 0) return 0.0;
    Eigen::VectorXcd ex = S.evaluate(x), ey = S.evaluate(y);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < B.V.size(); ++j) {
        const auto* b = S.block(B.block_weights[j]);
        Eigen::Index s = static_cast<Eigen::Index>(b->indices.size());
        Eigen::VectorXcd bx(s), by(s);
        for (Eigen::Index r = 0; r < s; ++r) {
            bx(r) = ex(b->indices[r]);
            by(r) = ey(b->indices[r]);
        }
        Eigen::VectorXcd a = B.V[j].transpose().cast<Complex>() * bx;
        Eigen::VectorXcd c = B.V[j].transpose().cast<Complex>() * by;
        acc += (a.array() * c.array().conjugate()).sum();
    }
    return acc;
}

Complex equivariant_kernel_quadrature(const SectionSpace& S, int n, const ManifoldPoint& x,
                                      const ManifoldPoint& y, int degree) {
    if (degree < 0) degree = n + S.total_degree();
    ProjectionRule P = ProjectionRule::make_unchecked(n, degree);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < P.nodes.size(); ++i)
        acc += P.weights[i] * full_kernel(S, x.act(P.nodes[i].inverse()), y);
    return acc;
}

KernelRouteCheck kernel_route_check(const SectionSpace& S, const IsotypeBasis& B,
                                    const ManifoldPoint& x, const ManifoldPoint& y, int degree,
                                    double tol) {
    KernelRouteCheck out;
    out.basis_value = equivariant_kernel(S, B, x, y);
    out.quadrature_value = equivariant_kernel_quadrature(S, B.n, x, y, degree);
    double scale = std::max(1.0, std::abs(out.basis_value));
    out.insufficient = std::abs(out.basis_value - out.quadrature_value) > tol * scale;
    return out;
}

double isotype_trace(const SectionSpace& S, const IsotypeBasis& B, int order) {
    const int d = S.manifold().factors();
    Rule rc = gauss_legendre(order, -1.0, 1.0);
    Rule rp = periodic_trapezoid(order, 0.0, 2.0 * kPi);
    std::vector<Vec3> nodes;
    std::vector<double> w;
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            double c = rc.nodes[i], s = std::sqrt(std::max(0.0, 1.0 - c * c));
            nodes.emplace_back(c, s * std::cos(rp.nodes[j]), s * std::sin(rp.nodes[j]));
            w.push_back(rc.weights[i] * rp.weights[j] / (4.0 * kPi));
        }
    std::vector<std::size_t> idx(d, 0);
    double acc = 0.0;
    while (true) {
        std::vector<Vec3> u(d);
        double weight = 1.0;
        for (int i = 0; i < d; ++i) {
            u[i] = nodes[idx[i]];
            weight *= w[idx[i]];
        }
        ManifoldPoint x = ManifoldPoint::from_directions(u);
        acc += weight * equivariant_kernel(S, B, x, x).real();
        int i = d - 1;
        while (i >= 0 && ++idx[i] == nodes.size()) idx[i--] = 0;
        if (i < 0) break;
    }
    return acc;
}

namespace {

constexpr char kMagic[4] = {'S', 'Z', 'I', 'B'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}
void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}
bool get_u64(std::istream& is, std::uint64_t& v) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return true;
}
bool get_u32(std::istream& is, std::uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return true;
}

}  // namespace

void save_isotype_basis(const std::string& path, const SectionSpace& S, const IsotypeBasis& B) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("save_isotype_basis: cannot open " + path);
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(B.weights.size()));
    for (int p : B.weights) put_u32(os, static_cast<std::uint32_t>(p));
    put_u32(os, static_cast<std::uint32_t>(B.k));
    put_u32(os, static_cast<std::uint32_t>(B.n));
    Eigen::MatrixXd D = B.dense_coefficients(S);
    put_u64(os, static_cast<std::uint64_t>(D.rows()));
    put_u64(os, static_cast<std::uint64_t>(D.cols()));
    for (Eigen::Index r = 0; r < D.rows(); ++r)
        for (Eigen::Index c = 0; c < D.cols(); ++c) {
            std::uint64_t bits;
            double v = D(r, c);
            std::memcpy(&bits, &v, 8);
            put_u64(os, bits);
        }
}

bool load_isotype_basis(const std::string& path, const SectionSpace& S, int n, IsotypeBasis& out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return false;
    char magic[4];
    std::uint32_t version = 0, count = 0, k = 0, label = 0;
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) return false;
    if (!get_u32(is, version) || version != kVersion || !get_u32(is, count)) return false;
    const auto& weights = S.manifold().weights();
    if (count != weights.size()) return false;
    for (int p : weights) {
        std::uint32_t v;
        if (!get_u32(is, v) || static_cast<int>(v) != p) return false;
    }
    if (!get_u32(is, k) || !get_u32(is, label)) return false;
    if (static_cast<int>(k) != S.k() || static_cast<int>(label) != n) return false;
    std::uint64_t rows = 0, cols = 0;
    if (!get_u64(is, rows) || !get_u64(is, cols)) return false;
    std::uint64_t mult = multiplicity(S.manifold(), S.k(), n);
    if (rows != static_cast<std::uint64_t>(S.dimension()) || cols != mult * (n + 1)) return false;
    Eigen::MatrixXd D(rows, cols);
    for (std::uint64_t r = 0; r < rows; ++r)
        for (std::uint64_t c = 0; c < cols; ++c) {
            std::uint64_t bits;
            if (!get_u64(is, bits)) return false;
            double v;
            std::memcpy(&v, &bits, 8);
            D(r, c) = v;
        }
    IsotypeBasis B;
    B.weights = weights;
    B.k = S.k();
    B.n = n;
    B.multiplicity = mult;
    Eigen::Index col = 0;
    if (mult > 0)
        for (int w = -n; w <= n; w += 2) {
            const auto* b = S.block(w);
            Eigen::MatrixXd V(static_cast<Eigen::Index>(b->indices.size()), static_cast<Eigen::Index>(mult));
            for (Eigen::Index c = 0; c < V.cols(); ++c, ++col)
                for (Eigen::Index r = 0; r < V.rows(); ++r) V(r, c) = D(b->indices[r], col);
            B.block_weights.push_back(w);
            B.V.push_back(std::move(V));
        }
    out = std::move(B);
    return true;
}

}  // namespace szego
