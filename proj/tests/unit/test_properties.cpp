#include "doctest.h"
#include "support/support.hpp"

using namespace moller;
using moller::testing::q;

TEST_SUITE("properties")
{
    TEST_CASE("sparse and dense elimination agree")
    {
        std::mt19937 rng(11);
        for (int t = 0; t < 40; ++t) {
            std::uniform_int_distribution<std::size_t> n(1, 9);
            SparseMatrix m = moller::testing::random_matrix(rng, n(rng), n(rng), 0.4);
            CHECK(rref_sparse(m).rows == rref_dense(m).rows);
            CHECK(rref_sparse(m).pivots == rref_dense(m).pivots);
            CHECK(rank(m) == rank(m.transpose()));
        }
    }

    TEST_CASE("retract constructions on random complexes")
    {
        std::mt19937 rng(3);
        for (int t = 0; t < 25; ++t) {
            moller::testing::RetractCase c = moller::testing::retract_case(rng, 12);
            INFO("case " << t << " dim " << c.total_dim);
            CHECK(c.cohomology);
            CHECK(c.hodge);
            CHECK(c.hodge_green);
            CHECK(c.composed);
            CHECK(c.sym);
        }
    }

    TEST_CASE("dual complexes")
    {
        std::mt19937 rng(8);
        for (int t = 0; t < 10; ++t) {
            CochainComplex c = moller::testing::random_complex(rng, 10);
            CochainComplex dual = dual_complex(c);
            CHECK(verify_complex(dual));
            for (int k : c.space->degrees())
                CHECK(cohomology(dual, -k).dimension == cohomology(c, k).dimension);
            // the sign rule picks up (-1)^{k} (-1)^{k+1} on the way back
            CochainComplex dd = dual_complex(dual);
            for (int k : c.space->degrees())
                if (const SparseMatrix* b = c.d.find_block(k))
                    CHECK(dd.d.block(k) == -*b);
        }
    }

    TEST_CASE("MC holds exactly when Jacobi holds")
    {
        std::mt19937 rng(21);
        for (int t = 0; t < 12; ++t) {
            LieAlgebra g = moller::testing::random_lie_algebra(rng);
            LInftyStructure good = moller::testing::conjugated_structure(
                rng, cs_model(g, CSVariant::Minimal).structure, 3);
            INFO("case " << t);
            CHECK(check_jacobi(good, 3).ok());
            CHECK(mc_check(build_ce(good, 3, 2, false)).ok());

            // perturb one structure constant on a nonabelian algebra
            if (g.abelian())
                continue;
            LieAlgebra bad = g;
            bool found = false;
            for (std::size_t i = 0; i < g.dim() && !found; ++i)
                for (std::size_t j = i + 1; j < g.dim() && !found; ++j)
                    for (std::size_t k = 0; k < g.dim() && !found; ++k) {
                        LieAlgebra m = mutated(g, i, j, k, g.constant(i, j, k) + 1);
                        if (!m.jacobi()) {
                            bad = m;
                            found = true;
                        }
                    }
            if (!found)
                continue;
            LInftyStructure l(cs_model(g, CSVariant::Minimal).structure.complex(), 2);
            l.set_bracket(2, shifted_lie_bracket(bad, l.power(2)));
            CHECK_FALSE(check_jacobi(l, 3).ok());
            CHECK_FALSE(mc_check(build_ce(l, 3, 2, false)).ok());
        }
    }

    TEST_CASE("tower verdicts are stable under a larger window")
    {
        std::mt19937 rng(34);
        for (int t = 0; t < 8; ++t) {
            moller::testing::RandomModel m = moller::testing::random_tower_model(rng);
            moller::testing::StabilityCase s = moller::testing::tower_stability(m.structure, 3, 2);
            INFO("case " << t << ": " << m.description);
            CHECK(s.same_verdict);
            CHECK(s.same_order);
            CHECK(s.certificates_clean);
        }
    }

    TEST_CASE("algebra-mode candidates satisfy the general equation")
    {
        std::mt19937 rng(55);
        for (int t = 0; t < 6; ++t) {
            SparseMatrix d = moller::testing::random_invertible(rng, 2);
            CEAlgebra a = build_ce(kg_toy(2, d, 4).structure, 4, 2);
            auto s = find_splitting(a);
            REQUIRE(s);
            MollerCandidate k = moller_from_splitting(a, *s);
            MollerCandidate general = k;
            general.mode = MollerMode::General;
            general.generator_images.clear();
            CHECK(verify_moller(a, general).verified());
        }
    }
}
