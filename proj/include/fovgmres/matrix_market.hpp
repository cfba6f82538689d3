#pragma once

#include <fovgmres/types.hpp>

#include <string>

namespace fovgmres {

enum class MmLayout { Coordinate, Array };

/// Reads a Matrix Market file (coordinate or array; real, integer or complex
/// field; general/symmetric/skew-symmetric/hermitian qualifiers). Symmetry
/// qualifiers are expanded to full storage.
ComplexMatrix read_matrix_market(const std::string& path);

/// Writes a dense matrix. The field is "real" when every entry has zero
/// imaginary part, "complex" otherwise. Coordinate output lists the exact
/// nonzeros in column-major order; values use 17 significant digits.
void write_matrix_market(const std::string& path, const ComplexMatrix& A,
                         MmLayout layout = MmLayout::Coordinate);

/// Plain vector files: a "%%vector n" header followed by one value per line.
Vector read_vector(const std::string& path);
void write_vector(const std::string& path, const Vector& v);

}  // namespace fovgmres
