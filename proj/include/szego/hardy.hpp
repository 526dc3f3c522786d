#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "szego/geometry.hpp"

namespace szego {

using Rational = boost::multiprecision::cpp_rational;

/// Level-k sections of the product bundle, spanned by monomials
/// prod_i z0_i^{a_i} z1_i^{N_i - a_i} with N_i = k p_i.
class SectionSpace {
public:
    struct Block {
        int weight = 0;                     // sum_i (2 a_i - N_i)
        std::vector<std::int64_t> indices;  // flat monomial indices
    };

    SectionSpace(const ModelManifold& M, int k, std::int64_t max_dimension = 4'000'000);

    const ModelManifold& manifold() const { return M_; }
    int k() const { return k_; }
    const std::vector<int>& degrees() const { return N_; }
    int total_degree() const { return total_; }
    std::int64_t dimension() const { return dim_; }

    std::vector<int> exponents(std::int64_t index) const;
    std::int64_t index_of(const std::vector<int>& a) const;
    int weight_of(std::int64_t index) const;

    const std::vector<Block>& blocks() const { return blocks_; }
    /// Block with the given weight, or nullptr when there is none.
    const Block* block(int weight) const;
    int position_in_block(std::int64_t index) const { return pos_[index]; }

    /// Exact Gram entry <m, m> of a monomial for the normalized measure.
    Rational gram_entry(std::int64_t index) const;

    /// Values of the orthonormal monomial sections at a point of the circle bundle.
    Eigen::VectorXcd evaluate(const ManifoldPoint& x) const;

    /// Casimir operator on one weight block, in the orthonormal monomial basis.
    /// Eigenvalue n(n+2) on the isotype V_n.
    Eigen::MatrixXd casimir_block(int weight) const;

private:
    ModelManifold M_;
    int k_;
    std::vector<int> N_;
    int total_ = 0;
    std::int64_t dim_ = 1;
    std::vector<std::int64_t> stride_;
    std::vector<std::vector<double>> log_norm_;  // log sqrt((N+1) C(N, a))
    std::vector<Block> blocks_;
    std::vector<int> pos_;
};

/// Orthonormal basis of the V_n-isotypic subspace, stored block by block:
/// the columns of V[j] live in the weight block block_weights[j].
struct IsotypeBasis {
    std::vector<int> weights;
    int k = 0;
    int n = 0;
    std::uint64_t multiplicity = 0;
    std::vector<int> block_weights;
    std::vector<Eigen::MatrixXd> V;

    std::uint64_t dimension() const { return multiplicity * static_cast<std::uint64_t>(n + 1); }
    /// Coefficients of all basis sections as columns of a dim(H_k) matrix.
    Eigen::MatrixXd dense_coefficients(const SectionSpace& S) const;
};

IsotypeBasis isotype_basis(const SectionSpace& S, int n);

/// Multiplicities of V_0..V_{sum N} in the level-k space by iterated
/// Clebsch-Gordan; exact integers, throws ResourceError on overflow.
/// Works on raw weights, so models with 0 in the moment image are allowed.
std::vector<std::uint64_t> multiplicities(const std::vector<int>& weights, int k);
std::uint64_t multiplicity(const std::vector<int>& weights, int k, int n);
std::uint64_t isotype_dimension(const std::vector<int>& weights, int k, int n);

inline std::uint64_t multiplicity(const ModelManifold& M, int k, int n) {
    return multiplicity(M.weights(), k, n);
}
inline std::uint64_t isotype_dimension(const ModelManifold& M, int k, int n) {
    return isotype_dimension(M.weights(), k, n);
}

/// Independent multiplicity oracles: weight counting and the torus
/// character integral.
std::uint64_t multiplicity_by_weights(const std::vector<int>& weights, int k, int n);
std::uint64_t multiplicity_by_characters(const std::vector<int>& weights, int k, int n);

/// Kernel of the full level-k projector for the normalized measure.
Complex full_kernel(const SectionSpace& S, const ManifoldPoint& x, const ManifoldPoint& y);

/// Kernel of the V_n-isotypic projector from an orthonormal basis.
Complex equivariant_kernel(const SectionSpace& S, const IsotypeBasis& B, const ManifoldPoint& x,
                           const ManifoldPoint& y);

/// Same kernel through the character projector applied to the full kernel.
/// A negative degree selects the exact quadrature degree.
Complex equivariant_kernel_quadrature(const SectionSpace& S, int n, const ManifoldPoint& x,
                                      const ManifoldPoint& y, int degree = -1);

struct KernelRouteCheck {
    Complex basis_value;
    Complex quadrature_value;
    bool insufficient = false;
};

KernelRouteCheck kernel_route_check(const SectionSpace& S, const IsotypeBasis& B,
                                    const ManifoldPoint& x, const ManifoldPoint& y,
                                    int degree = -1, double tol = 1e-8);

/// Integral of the diagonal over M for the normalized measure, using a
/// product rule with `order` nodes per coordinate on each sphere factor.
double isotype_trace(const SectionSpace& S, const IsotypeBasis& B, int order);

/// Binary cache of isotype bases: magic, version, key, then the row-major
/// dense coefficient matrix as little-endian doubles.
void save_isotype_basis(const std::string& path, const SectionSpace& S, const IsotypeBasis& B);
/// Returns false when the file is absent or its key does not match.
bool load_isotype_basis(const std::string& path, const SectionSpace& S, int n, IsotypeBasis& out);

}  // namespace szego
