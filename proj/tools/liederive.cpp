// liederive: exact decision procedures for derived Lie algebras.
//
// Subcommands: analyze, check-derived, verify, tower, builtin, ring.
// Exit codes: 0 = a verdict was produced (any status), 2 = invalid input,
// 3 = internal contradiction (a verified certificate together with a fired
// global obstruction; should never happen).

#include <liederive/io.hpp>

#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <sstream>

using namespace liederive;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitContradiction = 3;

struct FileOutcome {
    std::string text;
    int code = kExitOk;
};

std::string join_dims(const std::vector<std::size_t>& dims) {
    std::string s;
    for (std::size_t d : dims) s += (s.empty() ? "" : " ") + std::to_string(d);
    return s;
}

std::string profile_line(const StructureProfile& p) {
    std::vector<std::string> bits;
    if (p.is_abelian)
        bits.push_back("abelian");
    else if (p.is_nilpotent)
        bits.push_back("nilpotent (class " + std::to_string(p.nilpotency_class) + ")");
    else if (p.is_solvable)
        bits.push_back("solvable, not nilpotent");
    if (p.is_semisimple && *p.is_semisimple) bits.push_back("semisimple");
    if (p.is_perfect) bits.push_back("perfect");
    if (p.is_completely_solvable && p.is_solvable && !p.is_abelian)
        bits.push_back("completely solvable");
    if (p.is_filiform) bits.push_back("filiform");
    if (p.heisenberg_index) bits.push_back("heisenberg H_" + std::to_string(*p.heisenberg_index));
    if (p.almost_abelian) bits.push_back("almost abelian");
    if (bits.empty()) bits.push_back("no special structure flags");
    std::string s;
    for (const auto& b : bits) s += (s.empty() ? "" : ", ") + b;
    return s;
}

FileOutcome run_analyze(const std::string& path, const std::string& json_out) {
    std::ostringstream os;
    FileOutcome out;
    try {
        Json j = read_json_file(path);
        LieAlgebra L = lie_from_json(j);
        StructureProfile p = classify(L);
        os << path << ": dim " << L.dim() << " over " << L.field().to_string() << "\n";
        os << "  validate: ok\n";
        os << "  profile: " << profile_line(p) << "\n";
        os << "  dims: center " << p.dim_center << ", derived " << p.dim_derived << "\n";
        os << "  lower central dims: " << join_dims(p.lower_central_dims) << "\n";
        os << "  derived series dims: " << join_dims(p.derived_series_dims) << "\n";
        std::optional<CompositionData> comp;
        bool comp_unknown = false;
        if (L.field().is_rationals()) {
            os << "  radical dim: " << radical(L).dim() << "\n";
            try {
                comp = composition_series(L, factor_degree_cap());
                os << "  composition length: " << comp->length << " (factor dims:";
                for (const auto& f : comp->factors)
                    os << " " << f.dim << (f.simple ? "s" : "");
                os << ")\n";
            } catch (const ComponentsUnknownError&) {
                comp_unknown = true;
                os << "  composition length: unknown (component counting out of reach)\n";
            }
        }
        if (!json_out.empty()) {
            Json rep;
            rep["digest"] = digest_of(lie_to_json(L));
            rep["field"] = field_to_json(L.field());
            rep["dim"] = L.dim();
            rep["profile"] = profile_to_json(p);
            if (L.field().is_rationals()) rep["radical_dim"] = radical(L).dim();
            if (comp) rep["composition"] = composition_to_json(*comp);
            if (comp_unknown) rep["composition"] = "unknown";
            write_json_file(json_out, rep);
            os << "  report written to " << json_out << "\n";
        }
    } catch (const InvalidAlgebraError& e) {
        os << path << ": " << e.report.message() << "\n";
        out.code = kExitInvalidInput;
    } catch (const std::exception& e) {
        os << path << ": error: " << e.what() << "\n";
        out.code = kExitInvalidInput;
    }
    out.text = os.str();
    return out;
}

FileOutcome run_check_derived(const std::string& path, const std::string& json_out,
                              const std::string& cert_out) {
    std::ostringstream os;
    FileOutcome out;
    try {
        Json j = read_json_file(path);
        LieAlgebra L = lie_from_json(j);
        Verdict v = is_derived_algebra(L, factor_degree_cap());
        if (v.contradiction) {
            os << path << ": INTERNAL CONTRADICTION - certificate and obstruction both hold\n";
            out.code = kExitContradiction;
            out.text = os.str();
            return out;
        }
        switch (v.status) {
            case VerdictStatus::yes:
                os << path << ": YES - " << method_tag(v.certificate->method) << " ("
                   << method_anchor(v.certificate->method) << ")\n";
                os << "  integral dimension: " << v.certificate->integral.dim() << "\n";
                break;
            case VerdictStatus::no:
                os << path << ": NO - " << v.obstruction->tag() << ": " << v.obstruction->anchor()
                   << "\n";
                os << "  witness: " << v.obstruction->witness << "\n";
                break;
            case VerdictStatus::unknown:
                os << path << ": UNKNOWN\n";
                for (const auto& n : v.notes) os << "  note: " << n << "\n";
                break;
        }
        if (v.status != VerdictStatus::unknown)
            for (const auto& n : v.notes) os << "  note: " << n << "\n";
        if (!cert_out.empty()) {
            if (v.certificate) {
                write_json_file(cert_out, certificate_to_json(L, *v.certificate));
                os << "  certificate written to " << cert_out << "\n";
            } else {
                os << "  no certificate to write (verdict is not YES)\n";
            }
        }
        if (!json_out.empty()) {
            Json rep;
            rep["digest"] = digest_of(lie_to_json(L));
            rep["verdict"] = verdict_to_json(v);
            if (v.certificate && !cert_out.empty()) rep["certificate_file"] = cert_out;
            write_json_file(json_out, rep);
            os << "  report written to " << json_out << "\n";
        }
    } catch (const InvalidAlgebraError& e) {
        os << path << ": " << e.report.message() << "\n";
        out.code = kExitInvalidInput;
    } catch (const std::exception& e) {
        os << path << ": error: " << e.what() << "\n";
        out.code = kExitInvalidInput;
    }
    out.text = os.str();
    return out;
}

int run_many(const std::vector<std::string>& files, int jobs,
             const std::function<FileOutcome(const std::string&)>& task) {
    std::vector<FileOutcome> results(files.size());
    if (jobs <= 1 || files.size() <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) results[i] = task(files[i]);
    } else {
        std::vector<std::future<FileOutcome>> futures;
        std::size_t next = 0;
        while (next < files.size()) {
            std::size_t batch = std::min<std::size_t>(jobs, files.size() - next);
            futures.clear();
            for (std::size_t k = 0; k < batch; ++k)
                futures.push_back(
                    std::async(std::launch::async, task, files[next + k]));
            for (std::size_t k = 0; k < batch; ++k) results[next + k] = futures[k].get();
            next += batch;
        }
    }
    int code = kExitOk;
    for (const auto& r : results) {
        std::cout << r.text;
        code = std::max(code, r.code);
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision procedures for derived Lie algebras"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "structure profile of an algebra file");
    std::vector<std::string> analyze_files;
    std::string analyze_json;
    int analyze_jobs = 1;
    analyze->add_option("files", analyze_files, "algebra files")->required();
    analyze->add_option("--json", analyze_json, "write a JSON report (single file only)");
    analyze->add_option("--jobs", analyze_jobs, "process files in parallel");

    // check-derived
    auto* check = app.add_subcommand("check-derived",
                                     "decide whether the algebra is a derived algebra");
    std::vector<std::string> check_files;
    std::string check_json, check_cert;
    int check_jobs = 1;
    check->add_option("files", check_files, "algebra files")->required();
    check->add_option("--json", check_json, "write a JSON report (single file only)");
    check->add_option("--certificate", check_cert,
                      "write the integral certificate (single file only)");
    check->add_option("--jobs", check_jobs, "process files in parallel");

    // verify
    auto* verify = app.add_subcommand("verify", "replay an integral certificate");
    std::string verify_file;
    verify->add_option("certificate", verify_file, "certificate file")->required();

    // tower
    auto* tower_cmd = app.add_subcommand("tower", "derivation tower of a centreless algebra");
    std::string tower_file, tower_json;
    std::size_t max_steps = 16;
    tower_cmd->add_option("file", tower_file, "algebra file")->required();
    tower_cmd->add_option("--max-steps", max_steps, "tower step cap (default 16)");
    tower_cmd->add_option("--json", tower_json, "write the tower as JSON");

    // builtin
    auto* builtin = app.add_subcommand("builtin", "write a builtin family member");
    std::string family, builtin_out;
    std::size_t builtin_n = 0;
    std::int64_t gf_p = 0;
    builtin->add_option("family", family,
                        "abelian|heisenberg|filiform|almost_abelian|filiform_integral|"
                        "heisenberg_integral|two_dim_nonabelian|sl2|sl2_module_extension")
        ->required();
    builtin->add_option("n", builtin_n, "family parameter");
    builtin->add_option("--gf", gf_p, "prime field GF(p) instead of Q");
    builtin->add_option("-o,--output", builtin_out, "output file (stdout when omitted)");

    // ring
    auto* ring = app.add_subcommand("ring", "delta-series and nilpotency of an associative algebra");
    std::string ring_file, ring_json;
    ring->add_option("file", ring_file, "algebra file with \"assoc\": true")->required();
    ring->add_option("--json", ring_json, "write a JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            if (!analyze_json.empty() && analyze_files.size() > 1) {
                std::cerr << "--json requires a single input file\n";
                return kExitInvalidInput;
            }
            return run_many(analyze_files, analyze_jobs,
                            [&](const std::string& f) { return run_analyze(f, analyze_json); });
        }
        if (*check) {
            if ((!check_json.empty() || !check_cert.empty()) && check_files.size() > 1) {
                std::cerr << "--json/--certificate require a single input file\n";
                return kExitInvalidInput;
            }
            return run_many(check_files, check_jobs, [&](const std::string& f) {
                return run_check_derived(f, check_json, check_cert);
            });
        }
        if (*verify) {
            Json j = read_json_file(verify_file);
            CertificateFile cf = certificate_from_json(j);
            bool ok = verify_integral(cf.certificate.integral, cf.certificate.embedding,
                                      cf.algebra);
            if (ok) {
                std::cout << verify_file << ": certificate verifies (method "
                          << method_tag(cf.certificate.method) << ", algebra dim "
                          << cf.algebra.dim() << ", integral dim "
                          << cf.certificate.integral.dim() << ")\n";
                return kExitOk;
            }
            std::cout << verify_file << ": certificate REJECTED\n";
            return kExitInvalidInput;
        }
        if (*tower_cmd) {
            Json j = read_json_file(tower_file);
            LieAlgebra L = lie_from_json(j);
            if (!center(L).is_zero()) {
                std::cerr << tower_file << ": error: the centre must be zero for the tower\n";
                return kExitInvalidInput;
            }
            Tower t = derivation_tower(L, max_steps);
            std::cout << tower_file << ": tower dims:";
            for (const auto& term : t.terms) std::cout << " " << term.dim();
            std::cout << "\n";
            if (t.complete)
                std::cout << "  complete at step " << t.complete_step << "\n";
            else if (t.truncated)
                std::cout << "  truncated after " << max_steps << " steps (partial tower)\n";
            if (t.positive_characteristic)
                std::cout << "  note: unverified-theory over GF(p)\n";
            if (!tower_json.empty()) write_json_file(tower_json, tower_to_json(t));
            return kExitOk; // a partial tower is still a produced result
        }
        if (*builtin) {
            Field f = gf_p ? Field::gf(gf_p) : Field::rationals();
            namespace bb = liederive::builders;
            LieAlgebra L;
            if (family == "abelian") L = bb::abelian(builtin_n, f);
            else if (family == "heisenberg") L = bb::heisenberg(builtin_n, f);
            else if (family == "filiform" || family == "standard_filiform")
                L = bb::standard_filiform(builtin_n, f);
            else if (family == "almost_abelian") L = bb::almost_abelian(builtin_n, f);
            else if (family == "filiform_integral") L = bb::filiform_integral(builtin_n, f);
            else if (family == "heisenberg_integral") L = bb::heisenberg_integral(builtin_n, f);
            else if (family == "two_dim_nonabelian") L = bb::two_dim_nonabelian(f);
            else if (family == "sl2") L = bb::sl2(f);
            else if (family == "sl2_module_extension") L = bb::sl2_module_extension(builtin_n, f);
            else {
                std::cerr << "unknown family: " << family << "\n";
                return kExitInvalidInput;
            }
            Json j = lie_to_json(L);
            if (builtin_out.empty())
                std::cout << j.dump(2) << "\n";
            else
                write_json_file(builtin_out, j);
            return kExitOk;
        }
        if (*ring) {
            Json j = read_json_file(ring_file);
            if (!json_is_assoc(j)) {
                std::cerr << ring_file << ": error: ring analysis requires \"assoc\": true\n";
                return kExitInvalidInput;
            }
            AssocAlgebra r = assoc_from_json(j);
            Subspace d = derived_ring(r);
            auto chain = delta_series(r);
            std::cout << ring_file << ": dim " << r.dim() << " over " << r.field().to_string()
                      << (r.is_unital() ? ", unital" : "") << "\n";
            std::cout << "  derived ring dim: " << d.dim() << "\n";
            std::cout << "  delta series dims:";
            for (const auto& s : chain) std::cout << " " << s.dim();
            std::cout << "\n";
            std::cout << "  solvable: " << (chain.back().is_zero() ? "yes" : "no") << "\n";
            std::cout << "  nilpotent: " << (is_nilpotent_ring(r) ? "yes" : "no") << "\n";
            if (!ring_json.empty()) {
                Json rep;
                rep["digest"] = digest_of(assoc_to_json(r));
                rep["dim"] = r.dim();
                rep["unital"] = r.is_unital();
                rep["derived_ring_dim"] = d.dim();
                Json dims = Json::array();
                for (const auto& s : chain) dims.push_back(s.dim());
                rep["delta_series_dims"] = dims;
                rep["solvable"] = chain.back().is_zero();
                rep["nilpotent"] = is_nilpotent_ring(r);
                write_json_file(ring_json, rep);
            }
            return kExitOk;
        }
    } catch (const InvalidAlgebraError& e) {
        std::cerr << "error: " << e.report.message() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}
