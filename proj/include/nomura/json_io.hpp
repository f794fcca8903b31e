#pragma once

// JSON encodings of the library's values. Matrices are
//   {"rows": r, "cols": c, "entries": [[[re, im], ...], ...]}
// with doubles written in shortest round-trip form, so a read after a write
// reproduces every entry bit for bit.

#include <filesystem>

#include <json.hpp>

#include "nomura/factorization.hpp"
#include "nomura/matrix.hpp"
#include "nomura/nomura.hpp"
#include "nomura/schemes.hpp"
#include "nomura/typeii.hpp"

namespace nomura::json {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
/// Throws Errc::input for missing fields, ragged rows or non-finite values.
ComplexMatrix matrix_from_json(const json& j);

json typeii_to_json(const TypeIIMatrix& w);
/// Accepts any matrix document (the "v"/"residual" fields are recomputed).
TypeIIMatrix typeii_from_json(const json& j, const Tolerance& tol = {});

json perm_diag_to_json(const PermDiag& pd);
PermDiag perm_diag_from_json(const json& j);

json algebra_to_json(const NomuraAlgebra& alg, bool with_theta = true);

json scheme_to_json(const AssociationScheme& s);
AssociationScheme scheme_from_json(const json& j, const Tolerance& tol = {});

json spectrum_to_json(const HammingSpectrum& s);

json factorization_to_json(const FactorizationResult& f);

json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j);

} // namespace nomura::json
