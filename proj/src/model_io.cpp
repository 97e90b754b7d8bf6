#include "sqz/model_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sqz {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ModelError(origin + ": " + what);
}

int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

double as_number(const json& j, const std::string& origin, const std::string& field) {
    if (!j.is_number()) fail(origin, "field '" + field + "' must be a number");
    return j.get<double>();
}

Complex as_complex(const json& j, const std::string& origin, const std::string& field) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    fail(origin, "field '" + field + "' entries must be numbers or [re, im] pairs");
}

RMatrix real_block(const json& j, int n, const std::string& origin,
                   const std::string& field) {
    if (j.is_object()) {
        // power-law generator
        const double amplitude = as_number(j.at("amplitude"), origin, field + ".amplitude");
        const double exponent =
            j.contains("exponent") ? as_number(j.at("exponent"), origin, field + ".exponent")
                                   : 0.0;
        std::string geometry = j.value("geometry", std::string("chain"));
        if (geometry != "chain" && geometry != "ring")
            fail(origin, "field '" + field + ".geometry' must be 'chain' or 'ring'");
        RMatrix m = RMatrix::Zero(n, n);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                int r = b - a;
                if (geometry == "ring") r = std::min(r, n - r);
                m(a, b) = m(b, a) = amplitude / std::pow(static_cast<double>(r), exponent);
            }
        }
        return m;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        fail(origin, "field '" + field + "' must be an NxN array or a generator object");
    RMatrix m(n, n);
    for (int a = 0; a < n; ++a) {
        if (!j[a].is_array() || static_cast<int>(j[a].size()) != n)
            fail(origin, "field '" + field + "' must be an NxN array");
        for (int b = 0; b < n; ++b) m(a, b) = as_number(j[a][b], origin, field);
    }
    return m;
}

CMatrix complex_block(const json& j, int n, const std::string& origin,
                      const std::string& field) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        fail(origin, "field '" + field + "' must be an NxN array");
    CMatrix m(n, n);
    for (int a = 0; a < n; ++a) {
        if (!j[a].is_array() || static_cast<int>(j[a].size()) != n)
            fail(origin, "field '" + field + "' must be an NxN array");
        for (int b = 0; b < n; ++b) m(a, b) = as_complex(j[a][b], origin, field);
    }
    return m;
}

RVector field_vector(const json& j, int n, const std::string& origin) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        fail(origin, "field 'z_fields' must be a length-N array");
    RVector v(n);
    for (int a = 0; a < n; ++a) v(a) = as_number(j[a], origin, "z_fields");
    return v;
}

}  // namespace

CouplingSpec ModelFile::build() const {
    CouplingSpec spec;
    switch (kind) {
        case Kind::xyz:
            spec = build_xyz(jx, jy, jz);
            if (z_fields.size() > 0) spec.z_fields = z_fields;
            break;
        case Kind::oat:
            spec = build_oat(chi, n_sites);
            break;
        case Kind::tact:
            spec = build_tact(chi, n_sites);
            break;
        case Kind::explicit_spec:
            spec = make_spec(n_sites, k_matrix, j_matrix, zz_matrix,
                             z_fields.size() > 0 ? z_fields : RVector::Zero(n_sites));
            break;
    }
    spec.include_diagonal_in_kernel = include_diagonal_in_kernel;
    return spec;
}

ModelFile parse_model(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        fail(origin, "parse error at line " + std::to_string(line_of_byte(text, err.byte)) +
                         ": " + err.what());
    }
    try {
        if (!doc.is_object()) fail(origin, "top level must be an object");
        ModelFile model;
        if (!doc.contains("n_sites") || !doc["n_sites"].is_number_integer())
            fail(origin, "field 'n_sites' (integer) is required");
        model.n_sites = doc["n_sites"].get<int>();
        if (model.n_sites < 2) fail(origin, "field 'n_sites' must be at least 2");

        const std::string kind = doc.value("model", std::string("xyz"));
        const int n = model.n_sites;
        if (kind == "xyz") {
            model.kind = ModelFile::Kind::xyz;
            model.jx = doc.contains("jx") ? real_block(doc["jx"], n, origin, "jx")
                                          : RMatrix::Zero(n, n);
            model.jy = doc.contains("jy") ? real_block(doc["jy"], n, origin, "jy")
                                          : RMatrix::Zero(n, n);
            model.jz = doc.contains("jz") ? real_block(doc["jz"], n, origin, "jz")
                                          : RMatrix::Zero(n, n);
        } else if (kind == "oat" || kind == "tact") {
            model.kind = kind == "oat" ? ModelFile::Kind::oat : ModelFile::Kind::tact;
            if (!doc.contains("chi")) fail(origin, "field 'chi' is required for " + kind);
            model.chi = as_number(doc["chi"], origin, "chi");
        } else if (kind == "explicit") {
            model.kind = ModelFile::Kind::explicit_spec;
            model.k_matrix = doc.contains("k_matrix")
                                 ? complex_block(doc["k_matrix"], n, origin, "k_matrix")
                                 : CMatrix::Zero(n, n);
            model.j_matrix = doc.contains("j_matrix")
                                 ? complex_block(doc["j_matrix"], n, origin, "j_matrix")
                                 : CMatrix::Zero(n, n);
            model.zz_matrix = doc.contains("zz_matrix")
                                  ? real_block(doc["zz_matrix"], n, origin, "zz_matrix")
                                  : RMatrix::Zero(n, n);
        } else {
            fail(origin, "field 'model' must be one of xyz|oat|tact|explicit");
        }
        if (doc.contains("z_fields"))
            model.z_fields = field_vector(doc["z_fields"], n, origin);
        model.include_diagonal_in_kernel = doc.value("include_diagonal_in_kernel", true);
        return model;
    } catch (const json::exception& err) {
        fail(origin, err.what());
    }
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ModelError(path.string() + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str(), path.string());
}

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
}

void hash_double(std::uint64_t& h, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    hash_bytes(h, buf, std::char_traits<char>::length(buf));
}

}  // namespace

std::string model_hash(const CouplingSpec& spec) {
    std::uint64_t h = 1469598103934665603ull;
    hash_bytes(h, &spec.n_sites, sizeof(spec.n_sites));
    const int n = spec.n_sites;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            hash_double(h, spec.k_matrix(i, j).real());
            hash_double(h, spec.k_matrix(i, j).imag());
            hash_double(h, spec.j_matrix(i, j).real());
            hash_double(h, spec.j_matrix(i, j).imag());
            hash_double(h, spec.zz_matrix(i, j));
        }
        hash_double(h, spec.z_fields(i));
    }
    hash_double(h, spec.scalar_offset);
    hash_bytes(h, &spec.include_diagonal_in_kernel, sizeof(bool));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace sqz
