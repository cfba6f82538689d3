#include <fovgmres/errors.hpp>
#include <fovgmres/matrix_market.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fovgmres {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string fmt17(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

}  // namespace

ComplexMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::string header;
  if (!std::getline(in, header)) throw FormatError(path + ": empty file");
  std::istringstream hs(header);
  std::string banner, object, layout, field, symmetry;
  hs >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw FormatError(path + ": missing MatrixMarket banner");
  object = lower(object);
  layout = lower(layout);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw FormatError(path + ": unsupported object " + object);
  if (field == "pattern") throw FormatError(path + ": pattern field not supported");
  const bool complex_field = field == "complex";
  if (!complex_field && field != "real" && field != "integer")
    throw FormatError(path + ": unsupported field " + field);
  const bool coord = layout == "coordinate";
  if (!coord && layout != "array") throw FormatError(path + ": unsupported layout " + layout);

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream sz(line);
  Index rows = 0, cols = 0;
  long long nnz = 0;
  if (coord) {
    if (!(sz >> rows >> cols >> nnz)) throw FormatError(path + ": bad size line");
  } else {
    if (!(sz >> rows >> cols)) throw FormatError(path + ": bad size line");
  }
  if (rows < 1 || cols < 1) throw FormatError(path + ": matrix dimensions must be >= 1");

  ComplexMatrix A = ComplexMatrix::Zero(rows, cols);
  auto place = [&](Index i, Index j, Complex v) {
    if (i < 0 || i >= rows || j < 0 || j >= cols)
      throw FormatError(path + ": entry index out of range");
    A(i, j) = v;
    if (i != j) {
      if (symmetry == "symmetric")
        A(j, i) = v;
      else if (symmetry == "skew-symmetric")
        A(j, i) = -v;
      else if (symmetry == "hermitian")
        A(j, i) = std::conj(v);
    }
  };

  if (coord) {
    for (long long e = 0; e < nnz; ++e) {
      Index i, j;
      Real re, im = 0.0;
      if (!(in >> i >> j >> re)) throw FormatError(path + ": truncated entry list");
      if (complex_field && !(in >> im)) throw FormatError(path + ": truncated complex entry");
      place(i - 1, j - 1, Complex(re, im));
    }
  } else {
    // Array data is column-major; symmetric variants store the lower triangle.
    const bool full = symmetry == "general";
    for (Index j = 0; j < cols; ++j) {
      for (Index i = full ? 0 : j; i < rows; ++i) {
        Real re, im = 0.0;
        if (!(in >> re)) throw FormatError(path + ": truncated array data");
        if (complex_field && !(in >> im)) throw FormatError(path + ": truncated complex data");
        if (!full && symmetry == "skew-symmetric" && i == j && std::abs(re) + std::abs(im) != 0.0)
          throw FormatError(path + ": skew-symmetric diagonal must vanish");
        place(i, j, Complex(re, im));
      }
    }
  }
  if (!A.allFinite()) throw FormatError(path + ": non-finite entries");
  return A;
}

void write_matrix_market(const std::string& path, const ComplexMatrix& A, MmLayout layout) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const bool complex_field = (A.imag().cwiseAbs().maxCoeff() != 0.0);
  const char* field = complex_field ? "complex" : "real";

  if (layout == MmLayout::Array) {
    out << "%%MatrixMarket matrix array " << field << " general\n";
    out << A.rows() << " " << A.cols() << "\n";
    for (Index j = 0; j < A.cols(); ++j)
      for (Index i = 0; i < A.rows(); ++i) {
        out << fmt17(A(i, j).real());
        if (complex_field) out << " " << fmt17(A(i, j).imag());
        out << "\n";
      }
    return;
  }

  long long nnz = 0;
  for (Index j = 0; j < A.cols(); ++j)
    for (Index i = 0; i < A.rows(); ++i)
      if (A(i, j) != Complex(0, 0)) ++nnz;
  out << "%%MatrixMarket matrix coordinate " << field << " general\n";
  out << A.rows() << " " << A.cols() << " " << nnz << "\n";
  for (Index j = 0; j < A.cols(); ++j)
    for (Index i = 0; i < A.rows(); ++i) {
      const Complex v = A(i, j);
      if (v == Complex(0, 0)) continue;
      out << (i + 1) << " " << (j + 1) << " " << fmt17(v.real());
      if (complex_field) out << " " << fmt17(v.imag());
      out << "\n";
    }
}

Vector read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string banner;
  Index n = 0;
  in >> banner >> n;
  if (banner != "%%vector" || n < 0) throw FormatError(path + ": expected '%%vector n' header");
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    if (!(in >> v(i))) throw FormatError(path + ": truncated vector data");
  if (!v.allFinite()) throw FormatError(path + ": non-finite entries");
  return v;
}

void write_vector(const std::string& path, const Vector& v) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "%%vector " << v.size() << "\n";
  for (Index i = 0; i < v.size(); ++i) out << fmt17(v(i)) << "\n";
}

}  // namespace fovgmres
