#pragma once

#include <Eigen/Dense>
#include <string>

#include "gsync/rng.hpp"

namespace gsync {

enum class GroupKind { Orthogonal, SpecialOrthogonal, Permutation, Cyclic };

/// Which subgroup of the orthogonal group we synchronize over, together
/// with its element dimension and (for the cyclic group) its order.
struct GroupSpec {
    GroupKind kind = GroupKind::Orthogonal;
    int d = 1;  // element dimension; always 2 for Cyclic
    int m = 0;  // cyclic order; meaningful only for Cyclic

    static GroupSpec orthogonal(int d);
    static GroupSpec special_orthogonal(int d);
    static GroupSpec permutation(int d);
    static GroupSpec cyclic(int m);

    bool is_discrete() const {
        return kind == GroupKind::Permutation || kind == GroupKind::Cyclic;
    }
    std::string name() const;
};

/// Constant in the projection inequality: 1 for O(d), SO(d), P(d) and
/// Z_1/Z_2, and 1/sin(pi/m) for Z_m with m >= 3.
double rho(const GroupSpec& spec);

/// A group element together with a degeneracy flag from the projection
/// (set only when the cyclic angle is undefined and Q_0 was chosen by
/// convention).
struct GroupElement {
    Eigen::MatrixXd mat;
    bool degenerate = false;
};

/// Membership test against the GroupSpec's invariants (orthogonality to
/// 1e-9 Frobenius, determinant/entry constraints per group).
bool is_member(const GroupSpec& spec, const Eigen::MatrixXd& mat, double tol = 1e-9);

/// Rotation by angle 2*pi*k/m (the k-th cyclic group element).
Eigen::Matrix2d cyclic_element(int m, int k);

/// Nearest group element in Frobenius norm (equivalently the inner-product
/// maximizer over the group). Ties are resolved arbitrarily but
/// deterministically. Throws std::invalid_argument on dimension mismatch
/// or non-finite entries.
GroupElement project(const GroupSpec& spec, const Eigen::MatrixXd& X);

/// Procrustes solution U V^T from the SVD X = U S V^T.
GroupElement project_orthogonal(const Eigen::MatrixXd& X);

/// Kabsch solution U diag(1,...,1,det(UV^T)) V^T; always a proper rotation.
GroupElement project_special_orthogonal(const Eigen::MatrixXd& X);

/// Exact optimal assignment, O(d^3); ties broken by lowest row index first.
GroupElement project_permutation(const Eigen::MatrixXd& X);

/// Closed-form cyclic projection: the rotation angle of X is extracted via
/// arccos and rounded to the nearest multiple of 2*pi/m. When the angle is
/// undefined (x11+x22 = x21-x12 = 0) returns Q_0 with the degenerate flag.
GroupElement project_cyclic(const Eigen::MatrixXd& X, int m);

/// Uniform (Haar for O/SO, uniform over the finite set for P/Z_m) sample.
GroupElement sample_uniform(const GroupSpec& spec, Rng& rng);

}  // namespace gsync
