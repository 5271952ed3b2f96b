#include "doctest.h"
#include "support/support.hpp"

using namespace moller;
using moller::testing::dense;
using moller::testing::q;

namespace {

Polynomial image_of(const CEAlgebra& a, const GradedMap& m, std::uint32_t g)
{
    const SymTruncation& t = a.truncation();
    auto loc = t.find(Monomial{g});
    const SparseMatrix* blk = m.find_block(loc->first);
    if (!blk)
        return {};
    return t.polynomial(loc->first + m.shift(), blk->transpose().row(loc->second));
}

} // namespace

TEST_SUITE("moller")
{
    TEST_CASE("identity candidate with no perturbation")
    {
        CEAlgebra a = build_ce(cs_model(abelian(2), CSVariant::Minimal).structure, 3, 2);
        CHECK(verify_moller(a, identity_candidate(a)).verified());
        ObstructionReport r = obstruction_tower(a, 2, 3);
        CHECK(r.verdict == TowerVerdict::ExistsUpTo);
        for (const auto& o : r.orders) {
            CHECK(o.status == OrderStatus::Solved);
            CHECK(o.K.is_zero());
        }
    }

    TEST_CASE("1-point KG closed form")
    {
        CEAlgebra a = build_ce(kg_toy(1, dense({{2}}), 4).structure, 6, 4);
        auto s = find_splitting(a);
        REQUIRE(s);
        MollerCandidate k = moller_from_splitting(a, *s);
        CHECK(k.mode == MollerMode::Algebra);
        const GeneratorTable& gens = a.truncation().table();
        const std::uint32_t phi = gens.index(0, 0), anti = gens.index(-1, 0);
        CHECK(s->block(0).at(0, 0) == q(1, 2));
        CHECK(image_of(a, k.K.order(2).map, phi) == Polynomial{{Monomial{phi, phi, phi}, q(1, 2)}});
        CHECK(image_of(a, k.K.order(2).map, anti).empty());
        for (int n : {1, 3, 4})
            CHECK(image_of(a, k.K.order(n).map, phi).empty());
        CHECK(verify_moller(a, k).verified());
    }

    TEST_CASE("k-point diagonal KG")
    {
        CEAlgebra a = build_ce(kg_toy(3, dense({{1, 0, 0}, {0, -2, 0}, {0, 0, 5}}), 4).structure, 4, 3);
        auto s = find_splitting(a);
        REQUIRE(s);
        MollerCandidate k = moller_from_splitting(a, *s);
        CHECK(verify_moller(a, k).verified());
        const GeneratorTable& gens = a.truncation().table();
        const long diag[] = {1, -2, 5};
        for (std::size_t i = 0; i < 3; ++i) {
            const std::uint32_t phi = gens.index(0, i);
            CHECK(image_of(a, k.K.order(2).map, phi) == Polynomial{{Monomial{phi, phi, phi}, q(1, diag[i])}});
        }
    }

    TEST_CASE("N = 2 gives a linear change of variables")
    {
        CEAlgebra a = build_ce(kg_toy(2, dense({{2, 1}, {0, 1}}), 2).structure, 3, 3);
        auto s = find_splitting(a);
        REQUIRE(s);
        MollerCandidate k = moller_from_splitting(a, *s);
        CHECK(verify_moller(a, k).verified());
        const SymTruncation& t = a.truncation();
        for (std::uint32_t g = 0; g < t.table().size(); ++g)
            for (const auto& [m, c] : image_of(a, k.K.order(1).map, g))
                CHECK(m.size() == 1);
        CHECK(obstruction_tower(a, 3, 3).verdict == TowerVerdict::ExistsUpTo);
    }

    TEST_CASE("singular KG has no splitting")
    {
        KGModel kg = kg_toy(2, dense({{1, 1}, {1, 1}}), 4);
        CHECK_FALSE(kg.surjective);
        CEAlgebra a = build_ce(kg.structure, 3, 2);
        CHECK_FALSE(find_splitting(a));
        CHECK_THROWS_AS(moller_from_splitting(a, GradedMap(a.generators.space, a.generators.space, -1)),
                        SplittingInvalid);
    }

    TEST_CASE("splitting needs a two-term complex")
    {
        CSModel cs = cs_model(sl2(), CSVariant::Inflated, 2);
        CEAlgebra a = build_ce(cs.structure, 2, 1);
        CHECK_THROWS_AS(moller_from_splitting(a, GradedMap(a.generators.space, a.generators.space, -1)), NotTwoTerm);
    }

    TEST_CASE("sl2 minimal CS: identity fails at order one")
    {
        CEAlgebra a = build_ce(cs_model(sl2(), CSVariant::Minimal).structure, 3, 2);
        MollerVerification v = verify_moller(a, identity_candidate(a));
        CHECK_FALSE(v.verified());
        REQUIRE(v.orders.size() >= 2);
        CHECK(v.orders[0].holds);
        CHECK_FALSE(v.orders[1].holds);
    }

    TEST_CASE("tower obstructs sl2 at order one with a genuine certificate")
    {
        for (auto variant : {CSVariant::Minimal, CSVariant::Inflated}) {
            CEAlgebra a = build_ce(cs_model(sl2(), variant, 2).structure, 3, 2);
            ObstructionReport r = obstruction_tower(a, 2, 3);
            CHECK(r.verdict == TowerVerdict::ObstructedAtOrder);
            CHECK(r.obstructed_order == 1);
            REQUIRE(r.orders.size() == 1);
            REQUIRE(r.orders[0].certificate);
            const ObstructionCertificate& c = *r.orders[0].certificate;
            CHECK(c.pairing != 0);
            CHECK(certificate_valid(a, c));
            ObstructionCertificate tampered = c;
            tampered.pairing += 1;
            CHECK_FALSE(certificate_valid(a, tampered));
        }
    }

    TEST_CASE("solved prefixes verify")
    {
        CEAlgebra a = build_ce(kg_toy(2, dense({{1, 2}, {0, 3}}), 4).structure, 4, 4);
        ObstructionReport r = obstruction_tower(a, 4, 4);
        CHECK(r.verdict == TowerVerdict::ExistsUpTo);
        for (const auto& o : r.orders)
            CHECK(o.rhs_closed);
        CHECK(verify_moller(a, candidate_from_report(a, r)).verified());
    }

    TEST_CASE("algebra mode agrees with the general equation on every monomial")
    {
        CEAlgebra a = build_ce(kg_toy(2, dense({{3, 0}, {1, 1}}), 4).structure, 4, 2);
        MollerCandidate k = moller_from_splitting(a, *find_splitting(a));
        MollerCandidate general = k;
        general.mode = MollerMode::General;
        general.generator_images.clear();
        MollerVerification v1 = verify_moller(a, k), v2 = verify_moller(a, general);
        CHECK(v1.verified());
        CHECK(v2.verified());
    }

    TEST_CASE("window must fit the truncation")
    {
        CEAlgebra a = build_ce(kg_toy(1, dense({{2}}), 4).structure, 2, 2);
        CHECK_THROWS_AS(obstruction_tower(a, 3, 2), DimensionMismatch);
    }

    TEST_CASE("verdict strings")
    {
        CHECK(to_string(TowerVerdict::ExistsUpTo) == "EXISTS-UP-TO");
        CHECK(to_string(TowerVerdict::ObstructedAtOrder) == "OBSTRUCTED-AT-ORDER");
        CHECK(to_string(TowerVerdict::Inconclusive) == "INCONCLUSIVE");
        CHECK(to_string(OrderStatus::OverflowLimited) == "overflow-limited");
    }
}
