#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "sqz/coupling_spec.hpp"

namespace sqz {

/// Invalid or malformed model file; message carries a line/field diagnostic.
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed model definition. Kept in coupling-block form so parameter sweeps
/// can rescale one block and rebuild.
struct ModelFile {
    enum class Kind { xyz, oat, tact, explicit_spec };
    Kind kind = Kind::xyz;
    int n_sites = 0;
    double chi = 0.0;                  // oat / tact
    RMatrix jx, jy, jz;                // xyz
    CMatrix k_matrix, j_matrix;        // explicit
    RMatrix zz_matrix;                 // explicit
    RVector z_fields;                  // optional everywhere
    bool include_diagonal_in_kernel = true;

    CouplingSpec build() const;
};

/// Loads a JSON model document. Coupling blocks are dense arrays (complex
/// entries as [re, im] pairs) or power-law generators
/// {"amplitude": a, "exponent": p, "geometry": "chain" | "ring"}.
ModelFile load_model(const std::filesystem::path& path);
ModelFile parse_model(const std::string& text, const std::string& origin);

/// FNV-1a digest of the canonically serialized couplings, as 16 hex digits.
/// Stable across runs; used to correlate output files.
std::string model_hash(const CouplingSpec& spec);

}  // namespace sqz
