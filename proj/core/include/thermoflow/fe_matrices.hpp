#pragma once

#include <vector>

#include "thermoflow/fe_space.hpp"

namespace thermoflow {

// Default rule for assembly: exact for products of P2 values and gradients
// against a P2 advecting field.
inline constexpr int kAssemblyDegree = 6;

/// Consistent mass matrix; block diagonal for vector spaces.
SparseMatrix mass_matrix(const FunctionSpace& space);
/// Row-sum lumped mass of a P1 space: m_i = integral of phi_i.
Vector lumped_mass(const FunctionSpace& space);
/// Integral of grad u : grad v over the vector (or scalar) space.
SparseMatrix laplace_matrix(const FunctionSpace& space);
/// Rows: pressure basis q_i; columns: velocity basis; entry = integral q_i div(phi_j).
SparseMatrix divergence_matrix(const FunctionSpace& velocity_space,
                               const FunctionSpace& pressure_space);

/// Replaces constrained rows and columns by the identity. Entries are
/// dropped symmetrically, so a symmetric input stays symmetric.
void constrain_triplets(std::vector<Triplet>& triplets, const std::vector<char>& constrained_mask);

}  // namespace thermoflow
