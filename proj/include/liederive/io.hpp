#ifndef LIEDERIVE_IO_HPP
#define LIEDERIVE_IO_HPP

#include "assoc.hpp"
#include "classify.hpp"
#include "derivations.hpp"
#include "integrability.hpp"
#include "structure.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace liederive {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidAlgebraError : std::runtime_error {
    ValidationReport report;
    explicit InvalidAlgebraError(ValidationReport r)
        : std::runtime_error("algebra fails validation: " + r.message()), report(std::move(r)) {}
};

inline Json field_to_json(const Field& f) {
    if (f.is_rationals()) return Json{{"kind", "Q"}};
    return Json{{"kind", "GF"}, {"p", f.prime()}};
}

/// Runs a JSON-reading action, converting library exceptions to ParseError.
template <typename F>
auto guard_parse(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

inline Field field_from_json(const Json& j) {
    if (!j.contains("kind")) throw ParseError("field: missing kind");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "Q") return Field::rationals();
    if (kind == "GF") {
        if (!j.contains("p")) throw ParseError("field: GF requires p");
        return Field::gf(j.at("p").get<std::int64_t>());
    }
    throw ParseError("field: unknown kind '" + kind + "'");
}

inline Json matrix_to_json(const Matrix& m) {
    Json entries = Json::array();
    for (const auto& s : m.vectorize()) entries.push_back(s.to_string());
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline Matrix matrix_from_json(const Json& j, const Field& f) {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows * cols) throw ParseError("matrix: entry count mismatch");
    Matrix m(f, rows, cols);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jj = 0; jj < cols; ++jj)
            m.at(i, jj) = Scalar::parse(f, entries[idx++].get<std::string>());
    return m;
}

/// Algebra interchange format. Lie algebras list only the i<j nonzero
/// brackets and the loader symmetrizes; associative algebras ("assoc": true)
/// list the full product table.
inline Json lie_to_json(const LieAlgebra& L) {
    Json j;
    j["field"] = field_to_json(L.field());
    j["dim"] = L.dim();
    if (!L.labels().empty()) j["labels"] = L.labels();
    Json brackets = Json::array();
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t jj = i + 1; jj < L.dim(); ++jj) {
            Json terms = Json::array();
            for (std::size_t k = 0; k < L.dim(); ++k)
                if (!L.c(i, jj, k).is_zero())
                    terms.push_back(Json::array({k, L.c(i, jj, k).to_string()}));
            if (!terms.empty())
                brackets.push_back(Json{{"i", i}, {"j", jj}, {"terms", terms}});
        }
    j["brackets"] = brackets;
    return j;
}

inline LieAlgebra lie_from_json(const Json& j, bool validate = true) {
    return guard_parse([&] {
    Field f = field_from_json(j.at("field"));
    const std::size_t n = j.at("dim").get<std::size_t>();
    LieAlgebra L(f, n);
    if (j.contains("labels")) {
        std::vector<std::string> labels;
        for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
        if (labels.size() != n) throw ParseError("labels: wrong count");
        L.set_labels(labels);
    }
    if (j.contains("brackets"))
        for (const auto& b : j.at("brackets")) {
            const std::size_t i = b.at("i").get<std::size_t>();
            const std::size_t jj = b.at("j").get<std::size_t>();
            if (i >= jj || jj >= n) throw ParseError("brackets: indices must satisfy i < j < dim");
            for (const auto& t : b.at("terms")) {
                const std::size_t k = t.at(0).get<std::size_t>();
                if (k >= n) throw ParseError("brackets: target index out of range");
                Scalar v = Scalar::parse(f, t.at(1).get<std::string>());
                L.set_bracket_term(i, jj, k, v);
            }
        }
    if (validate) {
        auto rep = L.validate();
        if (!rep.ok) throw InvalidAlgebraError(rep);
    }
    return L;
    });
}

inline Json assoc_to_json(const AssocAlgebra& r) {
    Json j;
    j["field"] = field_to_json(r.field());
    j["dim"] = r.dim();
    j["assoc"] = true;
    if (!r.labels().empty()) j["labels"] = r.labels();
    Json brackets = Json::array();
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t jj = 0; jj < r.dim(); ++jj) {
            Json terms = Json::array();
            for (std::size_t k = 0; k < r.dim(); ++k)
                if (!r.m(i, jj, k).is_zero())
                    terms.push_back(Json::array({k, r.m(i, jj, k).to_string()}));
            if (!terms.empty())
                brackets.push_back(Json{{"i", i}, {"j", jj}, {"terms", terms}});
        }
    j["brackets"] = brackets;
    return j;
}

inline AssocAlgebra assoc_from_json(const Json& j, bool validate = true) {
    return guard_parse([&] {
    Field f = field_from_json(j.at("field"));
    const std::size_t n = j.at("dim").get<std::size_t>();
    AssocAlgebra r(f, n);
    if (j.contains("labels")) {
        std::vector<std::string> labels;
        for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
        r.set_labels(labels);
    }
    if (j.contains("brackets"))
        for (const auto& b : j.at("brackets")) {
            const std::size_t i = b.at("i").get<std::size_t>();
            const std::size_t jj = b.at("j").get<std::size_t>();
            if (i >= n || jj >= n) throw ParseError("products: index out of range");
            for (const auto& t : b.at("terms")) {
                const std::size_t k = t.at(0).get<std::size_t>();
                if (k >= n) throw ParseError("products: target index out of range");
                r.m(i, jj, k) = Scalar::parse(f, t.at(1).get<std::string>());
            }
        }
    if (validate) {
        if (auto bad = r.validate()) {
            ValidationReport rep;
            rep.ok = false;
            rep.axiom = "associativity";
            rep.i = (*bad)[0];
            rep.j = (*bad)[1];
            rep.l = (*bad)[2];
            throw InvalidAlgebraError(rep);
        }
    }
    return r;
    });
}

inline bool json_is_assoc(const Json& j) {
    return j.contains("assoc") && j.at("assoc").get<bool>();
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

/// FNV-1a 64-bit digest of the canonical serialization.
inline std::string digest_of(const Json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline Json profile_to_json(const StructureProfile& p) {
    Json j;
    j["abelian"] = p.is_abelian;
    j["nilpotent"] = p.is_nilpotent;
    if (p.is_nilpotent) j["nilpotency_class"] = p.nilpotency_class;
    j["solvable"] = p.is_solvable;
    j["perfect"] = p.is_perfect;
    if (p.is_semisimple) j["semisimple"] = *p.is_semisimple;
    j["completely_solvable"] = p.is_completely_solvable;
    j["filiform"] = p.is_filiform;
    if (p.heisenberg_index) j["heisenberg_index"] = *p.heisenberg_index;
    j["almost_abelian"] = static_cast<bool>(p.almost_abelian);
    j["dim_center"] = p.dim_center;
    j["dim_derived"] = p.dim_derived;
    j["lower_central_dims"] = p.lower_central_dims;
    j["derived_series_dims"] = p.derived_series_dims;
    return j;
}

/// Self-contained certificate file: the claim, both algebras, the embedding,
/// and replay instructions. `verify` re-derives everything from this file.
inline Json certificate_to_json(const LieAlgebra& L, const IntegralCertificate& cert) {
    Json j;
    j["status"] = "yes";
    j["method"] = method_tag(cert.method);
    j["anchor"] = method_anchor(cert.method);
    j["algebra"] = lie_to_json(L);
    j["integral"] = lie_to_json(cert.integral);
    j["embedding"] = matrix_to_json(cert.embedding);
    j["replay"] = "run: liederive verify <this-file>; it re-validates both algebras and checks "
                  "that the embedding maps the algebra isomorphically onto the derived algebra "
                  "of the integral";
    return j;
}

struct CertificateFile {
    LieAlgebra algebra;
    IntegralCertificate certificate;
};

inline CertificateFile certificate_from_json(const Json& j) {
    return guard_parse([&] {
    CertificateFile out;
    out.algebra = lie_from_json(j.at("algebra"));
    out.certificate.integral = lie_from_json(j.at("integral"));
    out.certificate.embedding =
        matrix_from_json(j.at("embedding"), out.algebra.field());
    std::string m = j.value("method", "self-perfect");
    for (CertificateMethod cm :
         {CertificateMethod::self_perfect, CertificateMethod::codim1, CertificateMethod::class2,
          CertificateMethod::abelian_radical, CertificateMethod::almost_abelian_char_p,
          CertificateMethod::direct_sum, CertificateMethod::filiform_model,
          CertificateMethod::heisenberg_model})
        if (m == method_tag(cm)) out.certificate.method = cm;
    return out;
    });
}

inline Json necessary_report_to_json(const NecessaryReport& rep) {
    auto checks_to_json = [](const std::vector<NecessaryCheck>& checks) {
        Json arr = Json::array();
        for (const auto& c : checks) {
            Json j{{"check", c.id}, {"applicable", c.applicable}, {"ok", c.ok}};
            if (!c.witness.empty()) j["witness"] = c.witness;
            arr.push_back(j);
        }
        return arr;
    };
    Json j;
    j["global"] = checks_to_json(rep.global);
    j["nilpotent_integral_only"] = checks_to_json(rep.nilpotent_only);
    j["all_global_pass"] = rep.all_global_pass();
    j["cannot_be_derived_of_nilpotent"] = rep.cannot_be_derived_of_nilpotent();
    return j;
}

inline Json verdict_to_json(const Verdict& v) {
    Json j;
    j["status"] = status_tag(v.status);
    if (v.certificate) {
        j["method"] = method_tag(v.certificate->method);
        j["anchor"] = method_anchor(v.certificate->method);
    }
    if (v.obstruction) {
        j["obstruction"] = v.obstruction->tag();
        j["anchor"] = v.obstruction->anchor();
        j["witness"] = v.obstruction->witness;
    }
    if (v.necessary) j["obstruction_table"] = necessary_report_to_json(*v.necessary);
    if (!v.notes.empty()) j["notes"] = v.notes;
    j["contradiction"] = v.contradiction;
    return j;
}

/// Composition chain with factor annotations: subspace bases plus per-step
/// factor dimension and simplicity.
inline Json composition_to_json(const CompositionData& d) {
    Json j;
    Json chain = Json::array();
    for (const auto& term : d.chain) chain.push_back(matrix_to_json(term.basis()));
    Json factors = Json::array();
    for (const auto& f : d.factors) factors.push_back(Json{{"dim", f.dim}, {"simple", f.simple}});
    j["chain"] = chain;
    j["factors"] = factors;
    j["length"] = d.length;
    return j;
}

/// Derivation bases serialize as arrays of matrices in the scalar string form.
inline Json derivation_basis_to_json(const std::vector<Matrix>& basis) {
    Json arr = Json::array();
    for (const auto& d : basis) arr.push_back(matrix_to_json(d));
    return arr;
}

inline Json tower_to_json(const Tower& t) {
    Json j;
    Json terms = Json::array();
    for (const auto& term : t.terms) terms.push_back(lie_to_json(term));
    Json embs = Json::array();
    for (const auto& e : t.embeddings) embs.push_back(matrix_to_json(e));
    j["terms"] = terms;
    j["embeddings"] = embs;
    j["complete"] = t.complete;
    if (t.complete) j["complete_step"] = t.complete_step;
    j["truncated"] = t.truncated;
    if (t.positive_characteristic)
        j["note"] = "unverified-theory: tower termination over GF(p) is checked, not guaranteed";
    return j;
}

} // namespace liederive

#endif
