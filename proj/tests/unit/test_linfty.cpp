#include "doctest.h"
#include "support/support.hpp"

using namespace moller;
using moller::testing::dense;
using moller::testing::q;

TEST_SUITE("linfty")
{
    TEST_CASE("sl2 structure constants")
    {
        LieAlgebra g = sl2();
        CHECK(g.antisymmetric());
        CHECK(g.jacobi());
        CHECK_FALSE(g.abelian());
        CHECK(g.constant(2, 0, 0) == 2);
        CHECK(g.constant(0, 2, 0) == -2);
        CHECK(g.constant(2, 1, 1) == -2);
        CHECK(g.constant(0, 1, 2) == 1);
        CHECK(abelian(3).abelian());
        CHECK(mutated(g, 0, 1, 2, q(2)).jacobi()); // a rescaling of f
        CHECK_FALSE(mutated(g, 0, 1, 0, q(1)).jacobi());
    }

    TEST_CASE("arity one is d squared")
    {
        SpacePtr s = make_space({{0, {"a"}}, {1, {"b"}}, {2, {"c"}}});
        GradedMap d(s, s, 1);
        d.set_block(0, dense({{1}}));
        d.set_block(1, dense({{1}}));
        LInftyStructure bad(CochainComplex(s, d), 1);
        CHECK_FALSE(check_jacobi(bad, 1).ok());
        CHECK(check_jacobi(LInftyStructure(circle_complex(4), 1), 1).ok());
    }

    TEST_CASE("KG satisfies Jacobi trivially")
    {
        for (int n : {2, 3, 4, 5}) {
            KGModel kg = kg_toy(2, dense({{1, 0}, {0, 3}}), n);
            CHECK(check_jacobi(kg.structure, std::max(n, 2)).ok());
        }
    }

    TEST_CASE("shifted bracket on ghosts")
    {
        CSModel cs = cs_model(sl2(), CSVariant::Minimal);
        const SymPower& p = cs.minimal.power(2);
        const GeneratorTable& gens = p.table();
        GradedMap l2 = cs.minimal.bracket(2);
        int td = 0;
        const std::uint32_t ce = gens.index(-1, 0), ch = gens.index(-1, 2);
        SparseVec he = evaluate_bracket(l2, p, {ch, ce}, td);
        CHECK(td == -1);
        CHECK(he == SparseVec{{0, q(-2)}});
        // odd inputs anticommute in Sym, so swapping them flips the sign
        CHECK(evaluate_bracket(l2, p, {ce, ch}, td) == SparseVec{{0, q(2)}});
        // restricted to ghosts: -[.,.] against the table
        LieAlgebra g = sl2();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j)
                    continue;
                SparseVec expected;
                for (const auto& e : g.bracket(i, j))
                    expected.push_back({e.index, -e.value});
                CHECK(evaluate_bracket(l2, p, {gens.index(-1, i), gens.index(-1, j)}, td) == expected);
            }
        CHECK(shifted_lie_bracket(abelian(3), cs_model(abelian(3), CSVariant::Minimal).minimal.power(2)).is_zero());
        CHECK_THROWS_AS(shifted_lie_bracket(sl2(), SymPower(circle_complex(3).space, 2)), DimensionMismatch);
    }

    TEST_CASE("CS minimal passes Jacobi at arities two and three")
    {
        CSModel cs = cs_model(sl2(), CSVariant::Minimal);
        JacobiReport r = check_jacobi(cs.structure, 3);
        REQUIRE(r.arities.size() == 3);
        for (const auto& a : r.arities)
            CHECK(a.holds);
    }

    TEST_CASE("the opposite mixed sign breaks Jacobi")
    {
        CSModel cs = cs_model(sl2(), CSVariant::Minimal);
        const SymPower& p = cs.minimal.power(2);
        GradedMap l2 = cs.minimal.bracket(2);
        GradedMap flipped(p.space(), cs.minimal.space(), 1);
        flipped.set_block(-2, l2.block(-2));
        flipped.set_block(-1, -l2.block(-1));
        LInftyStructure bad(cs.minimal.complex(), 2);
        bad.set_bracket(2, flipped);
        JacobiReport r = check_jacobi(bad, 3);
        CHECK_FALSE(r.ok());
    }

    TEST_CASE("mutated structure constants fail with a witness")
    {
        LieAlgebra bad = mutated(sl2(), 0, 1, 0, q(1));
        LInftyStructure l(CochainComplex::zero_differential(make_space({{-1, {"c_e", "c_f", "c_h"}}, {0, {"A_e", "A_f", "A_h"}}})), 2);
        l.set_bracket(2, shifted_lie_bracket(bad, l.power(2)));
        JacobiReport r = check_jacobi(l, 3);
        REQUIRE_FALSE(r.ok());
        const JacobiResult& fail = r.arities[2];
        CHECK_FALSE(fail.holds);
        CHECK(fail.witness.size() == 3);
        CHECK_FALSE(fail.value.empty());
        CHECK_THROWS_AS(cs_model(bad, CSVariant::Minimal), JacobiFailed);
    }

    TEST_CASE("dgla_from_retract")
    {
        CSModel minimal = cs_model(sl2(), CSVariant::Minimal);
        // identity retract leaves the bracket unchanged
        LInftyStructure same = dgla_from_retract(identity_retract(minimal.minimal.complex()), minimal.minimal);
        CHECK(same.bracket(2) == minimal.minimal.bracket(2));

        CSModel inflated = cs_model(sl2(), CSVariant::Inflated, 2);
        CHECK_FALSE(inflated.structure.complex().d.is_zero());
        CHECK(check_jacobi(inflated.structure, 3).ok());
        // vanishes on the acyclic summand
        const SymPower& p = inflated.structure.power(2);
        const GeneratorTable& gens = p.table();
        GradedMap l2 = inflated.structure.bracket(2);
        int td = 0;
        const std::uint32_t a0 = gens.index(-1, 3), ce = gens.index(-1, 0);
        CHECK(evaluate_bracket(l2, p, {a0, ce}, td).empty());
        // and matches the minimal bracket through p (x) p
        const SymPower& sp = minimal.minimal.power(2);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                SparseVec big = evaluate_bracket(l2, p, {gens.index(-1, i), gens.index(0, j)}, td);
                SparseVec small = evaluate_bracket(minimal.minimal.bracket(2), sp,
                                                   {sp.table().index(-1, i), sp.table().index(0, j)}, td);
                CHECK(big == small);
            }
        TransferredBracket back = transfer_l2(inflated.retract, inflated.structure);
        CHECK(back.small.bracket(2) == minimal.minimal.bracket(2));
    }
}
