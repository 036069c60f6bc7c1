#pragma once

#include <array>
#include <vector>

#include "dsm/eigen.hpp"
#include "dsm/matrix.hpp"

namespace dsm {

// Permutation of {0..dim-1}; map[j] is the image of position j.
struct Permutation {
    int dim = 0;
    std::array<int, kMaxDim> map{};

    static Permutation identity(int d);
    static std::vector<Permutation> all(int d);  // lexicographic order
    Permutation inverse() const;
    int lex_rank() const;
    bool operator==(const Permutation& o) const;
};

// Probability weights indexed by permutation, stored in lexicographic order.
struct PermWeights {
    int dim = 0;
    std::vector<Permutation> perms;
    std::vector<double> weights;

    double weight_of(const Permutation& p) const { return weights[p.lex_rank()]; }
};

// Complete flag given by an ordered basis: the nested spans of the leading
// vectors. Construction validates unit norms and linear independence.
struct Flag {
    int dim = 0;
    std::vector<ComplexVector> vectors;

    Flag() = default;
    explicit Flag(std::vector<ComplexVector> vs);

    // Orthonormal frame spanning the same nested chain, via QR with positive
    // diagonal; column i spans the i-th growth direction.
    ComplexMatrix orthonormal_frame() const;
};

// Finitely supported probability measure.
template <typename PointT>
struct AtomicMeasure {
    std::vector<PointT> points;
    std::vector<double> weights;
};

using FlagMeasure = AtomicMeasure<Flag>;

// Weights of the invariant measure on flags built from a matrix with
// eigenvalue moduli m_1 > ... > m_d: weight(sigma) proportional to
// prod_j m_j^(2(d - sigma(j))) in one-based convention. Computed in log
// space and normalized by log-sum-exp so large modulus ratios cannot
// overflow.
PermWeights ds_perm_weights(const std::vector<double>& moduli);

// The measure itself: d! atoms, the atom for ordering tau being the flag of
// eigenvectors (v_tau(1), ..., v_tau(d)). The flag ordered by tau carries
// the weight of tau^{-1} from ds_perm_weights: position j of the flag
// contributes modulus exponent 2(d - j), so the product over positions is
// prod_j m_tau(j)^(2(d-j)) = numerator of tau^{-1}. This pairing is the one
// that satisfies the averaging property (checked by the verify module) and
// projects to ds_projected_cp_weights.
FlagMeasure ds_measure_flag(const ComplexMatrix& a, double tie_tol = 1e-9);

// Marginal of the flag measure on the first line: p_i is the total weight of
// orderings that put eigenvector i first. Descending in i.
std::vector<double> ds_projected_cp_weights(const std::vector<double>& moduli);

// Closed form of the torus integral prod_{j<i} |1 - lambda_sigma(i)/lambda_sigma(j)|^2
// averaged over independent uniform phases: S(m) / prod_j m_sigma(j)^(2(d-j)),
// with S(m) = sum_pi prod_j m_j^(2(pi(j)-1)).
double torus_closed_form(const std::vector<double>& moduli, const Permutation& sigma);

// Checks the exponent rearrangement identity
// sum_sigma prod_j m_j^(2 sigma(j) - 2) = sum_sigma prod_j m_j^(2(d - sigma(j)))
// to 1e-10 relative in log space. Holds for every positive moduli vector.
bool exponent_bijection_check(const std::vector<double>& moduli);

// Invariant measure data for a real 2x2 matrix acting on the projective
// line. Hyperbolic positive determinant: one atom at the dominant
// eigendirection. Elliptic: absolutely continuous, described by the fixed
// point of the disk model (density machinery lives with the disk dynamics
// code). Negative determinant: two atoms weighted by eigenvalue modulus.
enum class Gl2Kind { HyperbolicAtom, EllipticAcip, NegDetAtoms };

struct Gl2rMeasure {
    Gl2Kind kind;
    AtomicMeasure<double> atoms;  // angles in [-pi/2, pi/2)
    Complex acip_alpha{};         // set when kind == EllipticAcip
};

Gl2rMeasure ds_measure_gl2r(const RealMatrix& a);

// Angle of the projective line through a direction vector, in [-pi/2, pi/2).
double projective_angle(double x, double y);

}  // namespace dsm
