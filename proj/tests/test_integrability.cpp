#include <liederive/integrability.hpp>

#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace liederive;
namespace b = liederive::builders;

namespace {
const Field Q = Field::rationals();

Subspace block(const LieAlgebra& L, std::size_t from, std::size_t count) {
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < count; ++i) rows.push_back(L.unit(from + i));
    return Subspace::span_of_vectors(L.field(), L.dim(), rows);
}

const NecessaryCheck& find_check(const NecessaryReport& rep, const std::string& id) {
    for (const auto& c : rep.global)
        if (c.id == id) return c;
    for (const auto& c : rep.nilpotent_only)
        if (c.id == id) return c;
    throw std::logic_error("missing check " + id);
}
} // namespace

TEST_CASE("verify_integral: the two model families and a negative control") {
    for (std::size_t n : {2u, 3u, 4u, 5u, 6u}) {
        auto cert = filiform_model_certificate(n);
        CHECK(verify_integral(cert.integral, cert.embedding, b::standard_filiform(n)));
    }
    for (std::size_t m : {1u, 2u, 3u}) {
        auto cert = heisenberg_model_certificate(m);
        CHECK(verify_integral(cert.integral, cert.embedding, b::heisenberg(m)));
    }
    // H_1 is not its own derived algebra
    LieAlgebra h1 = b::heisenberg(1);
    CHECK(!verify_integral(h1, Matrix::identity(Q, 3), h1));
}

TEST_CASE("necessary conditions") {
    SUBCASE("two-dimensional non-abelian: both named witnesses") {
        NecessaryReport rep = necessary_conditions(b::two_dim_nonabelian());
        CHECK(!rep.all_global_pass());
        const auto& ii = find_check(rep, "one-dim-characteristic-ideals-central");
        CHECK(!ii.ok);
        CHECK(ii.witness.find("(0, 1)") != std::string::npos); // span{a}
        const auto& iii = find_check(rep, "inner-derivations-inside-der-squared");
        CHECK(!iii.ok);
        REQUIRE(rep.first_obstruction);
        CHECK(rep.first_obstruction->code == ObstructionCode::char_ideal_not_central);
    }
    SUBCASE("almost abelian over Q: the trace witness") {
        NecessaryReport rep = necessary_conditions(b::almost_abelian(4));
        const auto& iii = find_check(rep, "inner-derivations-inside-der-squared");
        CHECK(!iii.ok);
        CHECK(iii.witness.find("= 3") != std::string::npos); // tr(ad x) = 3
    }
    SUBCASE("H_1: global checks pass, nilpotent-integral obstruction fires") {
        NecessaryReport rep = necessary_conditions(b::heisenberg(1));
        CHECK(rep.all_global_pass());
        CHECK(rep.cannot_be_derived_of_nilpotent());
        CHECK(!find_check(rep, "one-dim-centre-blocks-nilpotent-integral").ok);
        CHECK(!find_check(rep, "small-abelianization-blocks-nilpotent-integral").ok);
    }
    SUBCASE("non-nilpotent solvable over Q: the quotient condition fires") {
        NecessaryReport rep = necessary_conditions(b::two_dim_nonabelian());
        CHECK(!find_check(rep, "radical-nilpotent").ok);
        CHECK(!find_check(rep, "quotient-by-stable-derived-term-nilpotent").ok);
    }
    SUBCASE("characteristic-zero checks are skipped over GF(p)") {
        NecessaryReport rep = necessary_conditions(b::heisenberg(1, Field::gf(3)));
        CHECK(!find_check(rep, "radical-nilpotent").applicable);
    }
    SUBCASE("synthetic Leger-Togo fixtures") {
        Matrix e12(Q, 2, 2);
        e12.at(0, 1) = Scalar::one(Q);
        Subspace z1 = Subspace::line(Q, std::vector<Scalar>{Scalar::one(Q), Scalar::zero(Q)});
        Subspace z2 = Subspace::line(Q, std::vector<Scalar>{Scalar::zero(Q), Scalar::one(Q)});
        CHECK(derivations_annihilate({e12}, z1));
        CHECK(!derivations_annihilate({e12}, z2));
        CHECK(leger_togo_gap_fires(3, 4));  // 2(m-1) = 6 > 4
        CHECK(!leger_togo_gap_fires(5, 3)); // 4 <= 6
    }
}

TEST_CASE("codimension-one integrals") {
    SUBCASE("abelian(n): identity derivation, almost abelian extension") {
        for (std::size_t n : {1u, 2u, 3u, 4u}) {
            Codim1Result r = codim1_integral(b::abelian(n));
            REQUIRE(r.status == Codim1Result::Status::found);
            CHECK(r.certificate->integral == b::almost_abelian(n + 1));
        }
    }
    SUBCASE("standard filiform: a weighted derivation witness exists") {
        Codim1Result r = codim1_integral(b::standard_filiform(4));
        REQUIRE(r.status == Codim1Result::Status::found);
        CHECK(verify_integral(r.certificate->integral, r.certificate->embedding,
                              b::standard_filiform(4)));
    }
    SUBCASE("r2: certified none") {
        Codim1Result r = codim1_integral(b::two_dim_nonabelian());
        CHECK(r.status == Codim1Result::Status::none_certified);
    }
    SUBCASE("codim1 none agrees with GF(p) re-reductions of the same constants") {
        for (std::int64_t p : {2, 3, 5}) {
            Codim1Result r = codim1_integral(b::two_dim_nonabelian(Field::gf(p)));
            CHECK(r.status == Codim1Result::Status::none_certified);
        }
    }
}

TEST_CASE("class-2 construction") {
    SUBCASE("H_1: the frozen 4-dimensional integral") {
        IntegralCertificate c = class2_integral(b::heisenberg(1));
        LieAlgebra expected(Q, 4); // basis d, a, b, z
        expected.set_bracket_term(0, 1, 1, Scalar(Q, 1));
        expected.set_bracket_term(0, 2, 2, Scalar(Q, 1));
        expected.set_bracket_term(0, 3, 3, Scalar(Q, 2));
        expected.set_bracket_term(1, 2, 3, Scalar(Q, 1));
        CHECK(c.integral == expected);
        CHECK(verify_integral(c.integral, c.embedding, b::heisenberg(1)));
    }
    SUBCASE("abelian reduces to the identity map") {
        IntegralCertificate c = class2_integral(b::abelian(3));
        CHECK(c.integral == b::almost_abelian(4));
    }
    SUBCASE("heisenberg(2): both this and the model integral verify") {
        IntegralCertificate c = class2_integral(b::heisenberg(2));
        CHECK(c.integral.dim() == 6);
        CHECK(verify_integral(c.integral, c.embedding, b::heisenberg(2)));
        auto model = heisenberg_model_certificate(2);
        CHECK(verify_integral(model.integral, model.embedding, b::heisenberg(2)));
    }
    SUBCASE("precondition") {
        CHECK_THROWS_AS(class2_integral(b::standard_filiform(4)), std::invalid_argument);
    }
}

TEST_CASE("abelian-radical construction") {
    SUBCASE("sl2 + abelian(2)") {
        LieAlgebra L = direct_sum(b::sl2(), b::abelian(2));
        IntegralCertificate c = abelian_radical_integral(L);
        CHECK(c.integral.dim() == 6);
        CHECK(c.method == CertificateMethod::abelian_radical);
        CHECK(verify_integral(c.integral, c.embedding, L));
    }
    SUBCASE("semisimple input degrades to self-perfect") {
        CHECK(abelian_radical_integral(b::sl2()).method == CertificateMethod::self_perfect);
        CHECK(abelian_radical_integral(b::sl2_module_extension(1)).method ==
              CertificateMethod::self_perfect);
    }
    SUBCASE("non-abelian radical is rejected") {
        CHECK_THROWS_AS(abelian_radical_integral(direct_sum(b::sl2(), b::heisenberg(1))),
                        std::invalid_argument);
    }
}

TEST_CASE("almost abelian decision, both directions") {
    SUBCASE("GF(3), dimension 4: YES, with [f1,f2] = id re-multiplied here") {
        Field g3 = Field::gf(3);
        Verdict v = almost_abelian_decision(b::almost_abelian(4, g3));
        REQUIRE(v.status == VerdictStatus::yes);
        CHECK(v.certificate->method == CertificateMethod::almost_abelian_char_p);
        CHECK(verify_integral(v.certificate->integral, v.certificate->embedding,
                              b::almost_abelian(4, g3)));
        // model maps on A = GF(3)^3: cyclic shift and weighted inverse shift
        Matrix p(g3, 3, 3), diag(g3, 3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            p.at((i + 1) % 3, i) = Scalar::one(g3);
            diag.at(i, i) = Scalar(g3, -static_cast<long>(i));
        }
        Matrix f2 = diag * inverse(p);
        CHECK(p * f2 - f2 * p == Matrix::identity(g3, 3));
    }
    SUBCASE("GF(2), dimension 3: YES since 2 divides 2") {
        Verdict v = almost_abelian_decision(b::almost_abelian(3, Field::gf(2)));
        REQUIRE(v.status == VerdictStatus::yes);
        CHECK(verify_integral(v.certificate->integral, v.certificate->embedding,
                              b::almost_abelian(3, Field::gf(2))));
    }
    SUBCASE("Q: NO with the trace witness") {
        Verdict v = almost_abelian_decision(b::almost_abelian(3));
        REQUIRE(v.status == VerdictStatus::no);
        CHECK(v.obstruction->code == ObstructionCode::trace_nonzero_almost_abelian);
        CHECK(v.obstruction->witness.find("2") != std::string::npos);
    }
    SUBCASE("non-almost-abelian input is rejected") {
        CHECK_THROWS_AS(almost_abelian_decision(b::heisenberg(1)), std::invalid_argument);
    }
}

TEST_CASE("complete algebra decision") {
    Verdict v1 = complete_algebra_decision(b::sl2());
    CHECK(v1.status == VerdictStatus::yes);
    CHECK(v1.certificate->method == CertificateMethod::self_perfect);

    Verdict v2 = complete_algebra_decision(b::two_dim_nonabelian());
    CHECK(v2.status == VerdictStatus::no);

    LieAlgebra L = direct_sum(b::two_dim_nonabelian(), b::sl2());
    if (is_complete(L)) {
        Verdict v3 = complete_algebra_decision(L);
        CHECK(v3.status == VerdictStatus::no); // [L,L] = span{a} + sl2 is proper
    }
    CHECK_THROWS_AS(complete_algebra_decision(b::heisenberg(1)), std::invalid_argument);
}

TEST_CASE("characteristically nilpotent input: obstructions fire end to end") {
    LieAlgebra mu = corpus::char_nilpotent_filiform7();
    NecessaryReport rep = necessary_conditions(mu);
    const auto& ann = find_check(rep, "char-nilpotent-derivations-annihilate-centre");
    CHECK(ann.applicable);
    CHECK(!ann.ok); // Der(mu) kills the one-dimensional centre
    const auto& gap = find_check(rep, "char-nilpotent-gap");
    CHECK(gap.applicable);
    CHECK(!gap.ok); // 2(m-1) = 12 > class+1 = 7
    CHECK(gap.witness.find("12") != std::string::npos);

    Verdict fd = filiform_decision(mu);
    CHECK(fd.status == VerdictStatus::no);
    CHECK(fd.obstruction->code == ObstructionCode::filiform_char_nilpotent);

    Verdict v = is_derived_algebra(mu);
    CHECK(v.status == VerdictStatus::no);
}

TEST_CASE("honest unknown: gl(2) over GF(2)") {
    LieAlgebra L = corpus::gl2_gf2();
    StructureProfile p = classify(L);
    CHECK(p.is_solvable);
    CHECK(!p.is_nilpotent);
    CHECK(!p.is_perfect);
    Verdict v = is_derived_algebra(L);
    CHECK(v.status == VerdictStatus::unknown);
    REQUIRE(v.necessary);
    CHECK(v.necessary->all_global_pass());
    // no codimension-one integral exists, and the report says so
    bool noted = false;
    for (const auto& n : v.notes)
        if (n.find("no integral of dimension dim(L)+1") != std::string::npos) noted = true;
    CHECK(noted);
}

TEST_CASE("filiform decision") {
    for (std::size_t n : {4u, 6u}) {
        Verdict v = filiform_decision(b::standard_filiform(n));
        REQUIRE(v.status == VerdictStatus::yes);
        CHECK(verify_integral(v.certificate->integral, v.certificate->embedding,
                              b::standard_filiform(n)));
    }
    // abelian(2) is filiform by the class = dim - 1 convention, and H_1 is
    // the three-dimensional filiform algebra
    Verdict v = filiform_decision(b::abelian(2));
    CHECK(v.status == VerdictStatus::yes);
    CHECK(filiform_decision(b::heisenberg(1)).status == VerdictStatus::yes);
    CHECK_THROWS_AS(filiform_decision(b::heisenberg(2)), std::invalid_argument);
}

TEST_CASE("low length decision") {
    SUBCASE("two-dimensional non-abelian: NO") {
        Verdict v = low_length_decision(b::two_dim_nonabelian());
        CHECK(v.status == VerdictStatus::no);
        CHECK(v.obstruction->code == ObstructionCode::two_dim_nonabelian);
    }
    SUBCASE("sl2 + H_1: YES via the direct-sum composition") {
        LieAlgebra L = direct_sum(b::sl2(), b::heisenberg(1));
        Verdict v = low_length_decision(L);
        REQUIRE(v.status == VerdictStatus::yes);
        CHECK(v.certificate->method == CertificateMethod::direct_sum);
        CHECK(verify_integral(v.certificate->integral, v.certificate->embedding, L));
    }
    SUBCASE("sl2 + r2: NO, radical not nilpotent") {
        LieAlgebra L = direct_sum(b::sl2(), b::two_dim_nonabelian());
        Verdict v = low_length_decision(L);
        CHECK(v.status == VerdictStatus::no);
        CHECK(v.obstruction->code == ObstructionCode::radical_not_nilpotent);
    }
    SUBCASE("the four-dimensional nilpotent family") {
        Verdict va = low_length_decision(b::abelian(4));
        CHECK(va.status == VerdictStatus::yes);
        Verdict vh = low_length_decision(direct_sum(b::heisenberg(1), b::abelian(1)));
        CHECK(vh.status == VerdictStatus::yes);
        Verdict vf = low_length_decision(b::standard_filiform(4));
        REQUIRE(vf.status == VerdictStatus::yes);
        CHECK(vf.certificate->method == CertificateMethod::filiform_model);
        CHECK(verify_integral(vf.certificate->integral, vf.certificate->embedding,
                              b::standard_filiform(4)));
    }
    SUBCASE("semisimple-plus-abelian family") {
        for (std::size_t k : {1u, 2u, 3u}) {
            LieAlgebra L = direct_sum(b::sl2(), b::abelian(k));
            Verdict v = low_length_decision(L);
            REQUIRE(v.status == VerdictStatus::yes);
            CHECK(verify_integral(v.certificate->integral, v.certificate->embedding, L));
        }
        CHECK(low_length_decision(direct_sum(b::sl2(), b::sl2())).status == VerdictStatus::yes);
        // two components over a two-dimensional abelian radical (length 4)
        LieAlgebra L4 = direct_sum(direct_sum(b::sl2(), b::sl2()), b::abelian(2));
        Verdict v4 = low_length_decision(L4);
        REQUIRE(v4.status == VerdictStatus::yes);
        CHECK(verify_integral(v4.certificate->integral, v4.certificate->embedding, L4));
        // three components over a line (length 4)
        LieAlgebra L3 =
            direct_sum(direct_sum(direct_sum(b::sl2(), b::sl2()), b::sl2()), b::abelian(1));
        Verdict v3 = low_length_decision(L3);
        REQUIRE(v3.status == VerdictStatus::yes);
        CHECK(verify_integral(v3.certificate->integral, v3.certificate->embedding, L3));
    }
    SUBCASE("characteristic p and length bounds are enforced") {
        CHECK_THROWS_AS(low_length_decision(b::heisenberg(1, Field::gf(3))),
                        CharZeroRequiredError);
        CHECK_THROWS_AS(low_length_decision(b::heisenberg(2)), std::invalid_argument);
    }
}

TEST_CASE("orchestrator verdicts") {
    SUBCASE("heisenberg(3): YES via class 2") {
        Verdict v = is_derived_algebra(b::heisenberg(3));
        REQUIRE(v.status == VerdictStatus::yes);
        CHECK(v.certificate->method == CertificateMethod::class2);
        CHECK(!v.contradiction);
    }
    SUBCASE("almost_abelian(5, Q): NO with the trace obstruction") {
        Verdict v = is_derived_algebra(b::almost_abelian(5));
        REQUIRE(v.status == VerdictStatus::no);
        CHECK(v.obstruction->code == ObstructionCode::trace_nonzero_almost_abelian);
    }
    SUBCASE("r2: NO, report carries both witnesses") {
        Verdict v = is_derived_algebra(b::two_dim_nonabelian());
        REQUIRE(v.status == VerdictStatus::no);
        CHECK(v.obstruction->code == ObstructionCode::char_ideal_not_central);
        REQUIRE(v.necessary);
        CHECK(!find_check(*v.necessary, "one-dim-characteristic-ideals-central").ok);
        CHECK(!find_check(*v.necessary, "inner-derivations-inside-der-squared").ok);
    }
    SUBCASE("respective methods for the sufficiency families") {
        CHECK(is_derived_algebra(b::abelian(4)).certificate->method ==
              CertificateMethod::class2); // identity map
        CHECK(is_derived_algebra(b::heisenberg(2)).certificate->method ==
              CertificateMethod::class2);
        CHECK(is_derived_algebra(direct_sum(b::sl2(), b::abelian(2))).certificate->method ==
              CertificateMethod::abelian_radical);
        CHECK(is_derived_algebra(b::almost_abelian(4, Field::gf(3))).certificate->method ==
              CertificateMethod::almost_abelian_char_p);
        CHECK(is_derived_algebra(b::sl2()).certificate->method ==
              CertificateMethod::self_perfect);
    }
}

TEST_CASE("the pipeline is basis-independent") {
    // scrambled copies must get the same verdicts with verified certificates
    Matrix m6 = Matrix::from_ints(Q, {{1, 0, 2, 1, 0, 1},
                                      {0, 1, 1, 0, 2, 0},
                                      {0, 0, 1, 1, 0, 2},
                                      {0, 0, 0, 1, 1, 0},
                                      {0, 0, 0, 0, 1, 1},
                                      {0, 0, 0, 0, 0, 1}});
    LieAlgebra sum_alg = direct_sum(b::sl2(), b::heisenberg(1));
    LieAlgebra scrambled = change_basis(sum_alg, m6);
    REQUIRE(scrambled.validate().ok);
    Verdict v = is_derived_algebra(scrambled);
    REQUIRE(v.status == VerdictStatus::yes);
    CHECK(verify_integral(v.certificate->integral, v.certificate->embedding, scrambled));

    Field g3 = Field::gf(3);
    Matrix m4 = Matrix::from_ints(g3, {{1, 2, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 2}, {0, 0, 0, 1}});
    LieAlgebra aa = change_basis(b::almost_abelian(4, g3), m4);
    REQUIRE(aa.validate().ok);
    Verdict va = is_derived_algebra(aa);
    REQUIRE(va.status == VerdictStatus::yes);
    CHECK(va.certificate->method == CertificateMethod::almost_abelian_char_p);
    CHECK(verify_integral(va.certificate->integral, va.certificate->embedding, aa));

    LieAlgebra nope = change_basis(b::almost_abelian(4), Matrix::from_ints(Q, {{1, 1, 0, 0},
                                                                               {0, 1, 1, 0},
                                                                               {0, 0, 1, 1},
                                                                               {0, 0, 0, 1}}));
    REQUIRE(nope.validate().ok);
    CHECK(is_derived_algebra(nope).status == VerdictStatus::no);
}

TEST_CASE("verdicts are isomorphism invariants across random basis changes") {
    std::uniform_int_distribution<long> dist(-2, 2);
    auto random_unitriangular = [&](Field f, std::size_t n) {
        Matrix m = Matrix::identity(f, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) m.at(i, j) = Scalar(f, dist(oracles::rng()));
        return m;
    };
    for (const auto& e : corpus::all()) {
        if (e.algebra.dim() > 6 || e.algebra.dim() == 0) continue;
        INFO(e.name);
        Verdict base = is_derived_algebra(e.algebra);
        for (int trial = 0; trial < 2; ++trial) {
            Matrix m = random_unitriangular(e.algebra.field(), e.algebra.dim());
            LieAlgebra scrambled = change_basis(e.algebra, m);
            REQUIRE(scrambled.validate().ok);
            Verdict v = is_derived_algebra(scrambled);
            CHECK(v.status == base.status);
            if (v.status == VerdictStatus::yes)
                CHECK(verify_integral(v.certificate->integral, v.certificate->embedding,
                                      scrambled));
        }
    }
}

TEST_CASE("verify_integral rejects forgeries") {
    LieAlgebra h1 = b::heisenberg(1);
    IntegralCertificate good = class2_integral(h1);
    // swap two columns of the embedding: image is fine, homomorphism is not
    Matrix bad = good.embedding;
    for (std::size_t r = 0; r < bad.rows(); ++r) std::swap(bad.at(r, 0), bad.at(r, 2));
    CHECK(!verify_integral(good.integral, bad, h1));
    // non-injective embedding
    Matrix squash(h1.field(), good.integral.dim(), 3);
    CHECK(!verify_integral(good.integral, squash, h1));
    // image not the derived subalgebra: embed into the wrong coordinates
    Matrix off(h1.field(), good.integral.dim(), 3);
    for (std::size_t i = 0; i < 3; ++i) off.at(i, i) = Scalar::one(h1.field());
    CHECK(!verify_integral(good.integral, off, h1));
}

TEST_CASE("direct sums with a centre-free summand: the summand is never NO") {
    // if L1 + L2 has a verified integral and Z(L1) = 0, then L1 is a derived
    // algebra too; instantiated across small pairs
    std::vector<std::pair<std::string, LieAlgebra>> parts{
        {"sl2", b::sl2()},
        {"r2", b::two_dim_nonabelian()},
        {"abelian(2)", b::abelian(2)},
        {"heisenberg(1)", b::heisenberg(1)}};
    for (const auto& [n1, l1] : parts)
        for (const auto& [n2, l2] : parts) {
            LieAlgebra sum_alg = direct_sum(l1, l2);
            Verdict v = is_derived_algebra(sum_alg);
            if (v.status != VerdictStatus::yes) continue;
            if (!center(l1).is_zero()) continue;
            std::string label = n1 + " + " + n2;
            INFO(label);
            CHECK(is_derived_algebra(l1).status != VerdictStatus::no);
        }
}

TEST_CASE("reduced analysis") {
    SUBCASE("sl2 + line: centraliser equals the centre, not reduced") {
        LieAlgebra h = direct_sum(b::sl2(), b::abelian(1));
        ReducedReport rep = reduced_analysis(h, block(h, 0, 3));
        CHECK(rep.centralizer_of_l == block(h, 3, 1));
        CHECK(rep.center_of_h == block(h, 3, 1));
        CHECK(!rep.is_reduced);
        CHECK(rep.lemma_applicable);
        CHECK(rep.lemma_holds);
    }
    SUBCASE("sl2 inside itself: reduced") {
        LieAlgebra h = b::sl2();
        ReducedReport rep = reduced_analysis(h, Subspace::full(Q, 3));
        CHECK(rep.is_reduced);
        CHECK(rep.lemma_applicable);
        CHECK(rep.lemma_holds);
    }
    SUBCASE("central embedded ideal gates the lemma off") {
        IntegralCertificate c = class2_integral(b::abelian(3));
        ReducedReport rep = reduced_analysis(c.integral, block(c.integral, 1, 3));
        CHECK(!rep.lemma_applicable);
    }
    SUBCASE("non-ideal input is rejected") {
        LieAlgebra h = b::heisenberg(1);
        CHECK_THROWS_AS(reduced_analysis(h, Subspace::line(Q, h.unit(0))), NotAnIdealError);
    }
}

TEST_CASE("reduced chains") {
    SUBCASE("single sl2 step: passes with bound 3 <= 3") {
        ReducedChainReport rep =
            verify_reduced_chain({b::sl2(), b::sl2()}, {Matrix::identity(Q, 3)});
        CHECK(rep.ok);
        CHECK(rep.final_dim == 3);
        CHECK(rep.der_bound == 3);
    }
    SUBCASE("trivial chain from the r2 tower") {
        Tower t = derivation_tower(b::two_dim_nonabelian());
        CHECK(t.complete);
        ReducedChainReport rep = verify_reduced_chain(t.terms, t.embeddings);
        CHECK(rep.ok);
    }
    SUBCASE("forged chain with a nonzero centraliser is rejected") {
        LieAlgebra big = direct_sum(b::sl2(), b::abelian(1));
        Matrix emb(Q, 4, 3);
        for (std::size_t i = 0; i < 3; ++i) emb.at(i, i) = Scalar::one(Q);
        ReducedChainReport rep = verify_reduced_chain({b::sl2(), big}, {emb});
        CHECK(!rep.ok);
        CHECK(rep.failed_step == 1);
        CHECK(rep.failure.find("not reduced") != std::string::npos);
    }
}
