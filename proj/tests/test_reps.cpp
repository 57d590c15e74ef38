// Differential-operator realizations: closed-form generator oracles, exact
// bracket-table sweeps for every backend, cone-ideal preservation, the bulk
// -> boundary contraction, Casimir spectra, and y^Delta asymptotics.

#include <adskit/liealg.hpp>
#include <adskit/reps.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace adskit;

namespace {

Poly var(const VarTable& vt, int id) { return Poly::variable(vt.nvars(), id); }
Poly cst(const VarTable& vt, const Rat& c) { return Poly::constant(vt.nvars(), c); }

DiffOp scaled_deriv(const VarTable& vt, const Poly& f, int v) {
    return op_compose(DiffOp::multiplication(vt, f), DiffOp::derivative(vt, v));
}

// Weight with formal delta (the Delta variable itself) and zero lambda.
WeightLabel formal_weight(int q) {
    WeightLabel w;
    w.q = q;
    w.delta = AffineDelta{Rat(0), Rat(1)};
    w.lambda.assign(q / 2, Rat(0));
    return w;
}

WeightLabel cone_weight(int q, long l) {
    WeightLabel w = formal_weight(q);
    w.lambda.back() = Rat(l);
    return w;
}

// Delta * (q - Delta) over the full variable set.
Poly scalar_chi(const VarTable& vt) {
    const Poly d = var(vt, vt.delta());
    return d * (cst(vt, Rat(vt.q)) - d);
}

// Anticommuting pair with Gamma_0^2 = +1, Gamma_1^2 = -1, i.e. the Clifford
// normalization {Gamma_mu, Gamma_nu} = -2 eta_munu at q = 2.
std::vector<Mat<Rat>> dirac_pair() {
    Mat<Rat> g0(2), g1(2);
    g0(0, 1) = 1;
    g0(1, 0) = 1;
    g1(0, 1) = 1;
    g1(1, 0) = -1;
    return {g0, g1};
}

}  // namespace

TEST_CASE("boundary generators match their closed forms") {
    const int q = 2;
    BoundaryRealization rep(q, formal_weight(q), SpinBackend::scalar);
    const VarTable& vt = rep.vars();
    const Poly x0 = var(vt, vt.x(0)), x1 = var(vt, vt.x(1)), dl = var(vt, vt.delta());

    SECTION("translations are bare derivatives") {
        CHECK(rep.T(0) == DiffOp::derivative(vt, vt.x(0)));
        CHECK(rep.T(1) == DiffOp::derivative(vt, vt.x(1)));
    }

    SECTION("dilatation counts degree and weight") {
        const DiffOp want = -scaled_deriv(vt, x0, vt.x(0)) - scaled_deriv(vt, x1, vt.x(1)) -
                            DiffOp::multiplication(vt, dl);
        CHECK(rep.D() == want);
    }

    SECTION("rotation mixes the two coordinates symmetrically") {
        // -eta_00 x0 d1 + eta_11 x1 d0 = x0 d1 + x1 d0
        const DiffOp want = scaled_deriv(vt, x0, vt.x(1)) + scaled_deriv(vt, x1, vt.x(0));
        CHECK(rep.X(0, 1) == want);
        CHECK(rep.X(1, 0) == -want);
        CHECK(rep.X(0, 0).is_zero());
    }

    SECTION("special conformal generators, fully expanded") {
        const DiffOp c0 = -scaled_deriv(vt, x0 * x0 + x1 * x1, vt.x(0)) -
                          scaled_deriv(vt, x0 * x1 * Rat(2), vt.x(1)) -
                          DiffOp::multiplication(vt, dl * x0 * Rat(2));
        const DiffOp c1 = scaled_deriv(vt, x0 * x1 * Rat(2), vt.x(0)) +
                          scaled_deriv(vt, x0 * x0 + x1 * x1, vt.x(1)) +
                          DiffOp::multiplication(vt, dl * x1 * Rat(2));
        CHECK(rep.C(0) == c0);
        CHECK(rep.C(1) == c1);
    }

    SECTION("basis dictionary routes through T, C, D, X") {
        CHECK(rep.generator(BasisIndex{0, 1}) == rep.X(0, 1));
        CHECK(rep.generator(BasisIndex{0, 2}) == (rep.T(0) + rep.C(0)) * rat(1, 2));
        CHECK(rep.generator(BasisIndex{0, 3}) == (rep.T(0) - rep.C(0)) * rat(1, 2));
        CHECK(rep.generator(BasisIndex{2, 3}) == rep.D());
        CHECK_THROWS_AS(rep.generator(BasisIndex{1, 1}), std::invalid_argument);
    }

    SECTION("realize is linear over the canonical basis") {
        const Mat<Rat> z = T_generator(q, 0) * Rat(2) + D_generator(q) * rat(-1, 3);
        CHECK(rep.realize(z) == rep.T(0) * Rat(2) + rep.D() * rat(-1, 3));
        CHECK(rep.realize(Mat<Rat>(q + 2)).is_zero());
    }

    SECTION("input validation") {
        WeightLabel w = formal_weight(q);
        w.lambda[0] = Rat(1);
        CHECK_THROWS_AS(BoundaryRealization(q, w, SpinBackend::scalar), std::invalid_argument);
        w.lambda[0] = rat(1, 2);
        CHECK_THROWS_AS(BoundaryRealization(q, w, SpinBackend::cone), std::invalid_argument);
        w.lambda[0] = Rat(-1);
        CHECK_THROWS_AS(BoundaryRealization(q, w, SpinBackend::cone), std::invalid_argument);
        CHECK_THROWS_AS(BoundaryRealization(q, formal_weight(q), SpinBackend::matrix),
                        std::invalid_argument);
        WeightLabel mism = formal_weight(3);
        CHECK_THROWS_AS(BoundaryRealization(q, mism, SpinBackend::scalar),
                        std::invalid_argument);
        CHECK_THROWS_AS(rep.T(2), std::out_of_range);
    }
}

TEST_CASE("bulk generators match their closed forms") {
    const int q = 2;
    BulkRealization rep(q);
    const VarTable& vt = rep.vars();
    const Poly x0 = var(vt, vt.x(0)), x1 = var(vt, vt.x(1)), y = var(vt, vt.y());

    SECTION("dilatation also counts the radial coordinate") {
        const DiffOp want = -scaled_deriv(vt, x0, vt.x(0)) - scaled_deriv(vt, x1, vt.x(1)) -
                            scaled_deriv(vt, y, vt.y());
        CHECK(rep.D() == want);
    }

    SECTION("special conformal generator carries the -y^2 correction") {
        const DiffOp want = op_compose(DiffOp::multiplication(vt, x0 * Rat(2)), rep.D()) +
                            scaled_deriv(vt, x0 * x0 - x1 * x1 - y * y, vt.x(0));
        CHECK(rep.C(0) == want);
    }

    SECTION("rotations never touch the radial coordinate") {
        const DiffOp want = scaled_deriv(vt, x0, vt.x(1)) + scaled_deriv(vt, x1, vt.x(0));
        CHECK(rep.X(0, 1) == want);
    }
}

TEST_CASE("bracket tables close with a uniform global sign") {
    for (int q = 2; q <= 4; ++q) {
        DYNAMIC_SECTION("boundary scalar, q = " << q) {
            BoundaryRealization rep(q, formal_weight(q), SpinBackend::scalar);
            const auto sweep = bracket_table_sweep(
                q, [&](const BasisIndex& i) { return rep.generator(i); });
            INFO("first failing pair: X_" << sweep.first_a.a << sweep.first_a.b << ", X_"
                                          << sweep.first_b.a << sweep.first_b.b);
            REQUIRE(sweep.ok);
            CHECK(sweep.global_sign == 1);
        }
        DYNAMIC_SECTION("boundary cone rank 1, q = " << q) {
            BoundaryRealization rep(q, cone_weight(q, 1), SpinBackend::cone);
            const auto sweep = bracket_table_sweep(
                q, [&](const BasisIndex& i) { return rep.generator(i); });
            INFO("first failing pair: X_" << sweep.first_a.a << sweep.first_a.b << ", X_"
                                          << sweep.first_b.a << sweep.first_b.b);
            REQUIRE(sweep.ok);
            CHECK(sweep.global_sign == 1);
        }
        DYNAMIC_SECTION("bulk scalar, q = " << q) {
            BulkRealization rep(q);
            const auto sweep = bracket_table_sweep(
                q, [&](const BasisIndex& i) { return rep.generator(i); });
            INFO("first failing pair: X_" << sweep.first_a.a << sweep.first_a.b << ", X_"
                                          << sweep.first_b.a << sweep.first_b.b);
            REQUIRE(sweep.ok);
            CHECK(sweep.global_sign == 1);
        }
    }
}

TEST_CASE("matrix backend closes the bracket table") {
    const int q = 2;
    const auto gamma = dirac_pair();

    SECTION("the Dirac pair passes validation") {
        const GammaCheck chk = validate_gamma(q, gamma);
        INFO(chk.relation);
        CHECK(chk.ok);
    }

    SECTION("a commuting matrix is rejected with the failing triple") {
        Mat<Rat> id(2);
        id(0, 0) = 1;
        id(1, 1) = 1;
        const GammaCheck chk = validate_gamma(q, {id, gamma[1]});
        REQUIRE_FALSE(chk.ok);
        CHECK(chk.mu == 0);
        CHECK(chk.nu == 1);
        CHECK_FALSE(chk.relation.empty());
        CHECK(validate_gamma(q, {gamma[0]}).ok == false);
        CHECK_THROWS_AS(BulkMatrixRealization(q, {id, gamma[1]}), std::invalid_argument);
    }

    BulkMatrixRealization rep(q, gamma);
    const VarTable& vt = rep.vars();

    SECTION("special conformal generators commute") {
        CHECK(spin_is_zero(spin_commutator(rep.C(0), rep.C(1))));
    }

    SECTION("full table against the matrix commutators") {
        const auto idxs = all_basis_indices(q);
        std::vector<SpinOp> realized;
        for (const auto& i : idxs) realized.push_back(rep.generator(i));

        // Sign measurement on [D, T_0] = T_0.
        const SpinOp rt0 = rep.realize(T_generator(q, 0));
        CHECK(spin_equal(spin_commutator(rep.D(), rt0), rt0));

        for (std::size_t i = 0; i < idxs.size(); ++i)
            for (std::size_t j = 0; j < idxs.size(); ++j) {
                const Mat<Rat> br =
                    commutator(generator(q, idxs[i]), generator(q, idxs[j]));
                INFO("pair X_" << idxs[i].a << idxs[i].b << ", X_" << idxs[j].a << idxs[j].b);
                REQUIRE(spin_equal(spin_commutator(realized[i], realized[j]),
                                   rep.realize(br)));
            }
        CHECK(rep.spin_dim() == 2);
        CHECK(vt.q == q);
    }
}

TEST_CASE("cone generators preserve the cone ideal") {
    for (int q = 3; q <= 4; ++q) {
        DYNAMIC_SECTION("q = " << q) {
            BoundaryRealization rep(q, cone_weight(q, 1), SpinBackend::cone);
            const VarTable& vt = rep.vars();
            Poly cone = var(vt, vt.zeta(0)) * var(vt, vt.zeta(0));
            for (int a = 1; a < q; ++a)
                cone = cone - var(vt, vt.zeta(a)) * var(vt, vt.zeta(a));
            REQUIRE(reduce_mod_cone(vt, cone).is_zero());

            const std::vector<Poly> cofactors = {
                cst(vt, Rat(1)), var(vt, vt.x(0)) * var(vt, vt.zeta(1)), var(vt, vt.zeta(0))};
            for (const auto& idx : all_basis_indices(q)) {
                const DiffOp g = rep.generator(idx);
                for (const auto& f : cofactors) {
                    INFO("generator X_" << idx.a << idx.b);
                    CHECK(reduce_mod_cone(vt, g.apply(cone * f)).is_zero());
                }
            }
        }
    }
}

TEST_CASE("contraction reproduces the boundary realization index by index") {
    for (int q = 2; q <= 4; ++q) {
        for (const bool concrete : {false, true}) {
            WeightLabel w = formal_weight(q);
            if (concrete) w.delta = AffineDelta{Rat(2), Rat(0)};
            DYNAMIC_SECTION("q = " << q << (concrete ? ", concrete weight" : ", formal weight")) {
                BulkRealization bulk(q);
                BoundaryRealization bdry(q, w, SpinBackend::scalar);
                const VarTable& vt = bulk.vars();
                for (const auto& idx : all_basis_indices(q)) {
                    INFO("generator X_" << idx.a << idx.b);
                    CHECK(contraction_to_boundary(bulk.generator(idx), w, vt) ==
                          bdry.generator(idx));
                }
            }
        }
    }

    SECTION("structural cases") {
        const VarTable vt(2);
        const WeightLabel w = formal_weight(2);
        const Poly y = var(vt, vt.y());
        // A bare d_y leaves a 1/y behind: structurally invalid.
        CHECK_THROWS_AS(contraction_to_boundary(DiffOp::derivative(vt, vt.y()), w, vt),
                        std::invalid_argument);
        // y^2 d_y decays faster than y^Delta: contracts to zero.
        CHECK(contraction_to_boundary(scaled_deriv(vt, y * y, vt.y()), w, vt).is_zero());
        // y^2 d_y^2 contracts to the falling factorial Delta (Delta - 1).
        DiffOp y2dyy = DiffOp::zero(vt);
        {
            DiffOp::DerivIndex a(vt.nvars(), 0);
            a[vt.y()] = 2;
            y2dyy.add_term(a, y * y);
        }
        const Poly dl = var(vt, vt.delta());
        CHECK(contraction_to_boundary(y2dyy, w, vt) ==
              DiffOp::multiplication(vt, dl * (dl - cst(vt, Rat(1)))));
    }
}

TEST_CASE("casimir acts as multiplication by its closed-form eigenvalue") {
    SECTION("scalar spectrum is Delta (q - Delta)") {
        for (int q = 2; q <= 5; ++q) {
            DYNAMIC_SECTION("q = " << q) {
                const WeightLabel w = formal_weight(q);
                const VarTable vt(q);
                const Poly chi = casimir_eigenvalue(w, SpinBackend::scalar);
                CHECK(chi == scalar_chi(vt));
                // Symmetric under Delta -> q - Delta.
                CHECK(chi.substitute(vt.delta(), cst(vt, Rat(q)) - var(vt, vt.delta())) == chi);
                // The mirror weight shares the spectrum.
                CHECK(casimir_eigenvalue(mirror_weight(w), SpinBackend::scalar) == chi);
            }
        }
    }

    SECTION("concrete weight gives a constant") {
        WeightLabel w = formal_weight(3);
        w.delta = AffineDelta{rat(5, 2), Rat(0)};
        const VarTable vt(3);
        CHECK(casimir_eigenvalue(w, SpinBackend::scalar) == cst(vt, rat(5, 4)));
    }

    SECTION("the operator multiplies an arbitrary polynomial") {
        const int q = 3;
        const WeightLabel w = formal_weight(q);
        const VarTable vt(q);
        const DiffOp c2 = boundary_casimir(q, w, SpinBackend::scalar);
        const Poly f = var(vt, vt.x(0)) * var(vt, vt.x(0)) * var(vt, vt.x(1)) + cst(vt, Rat(7));
        CHECK(c2.apply(f) == scalar_chi(vt) * f);
    }

    SECTION("cone spectrum shifts by the internal rotation Casimir") {
        for (const auto& [q, l] : std::vector<std::pair<int, long>>{{2, 1}, {3, 1}, {4, 1}, {3, 2}}) {
            DYNAMIC_SECTION("q = " << q << ", rank = " << l) {
                const VarTable vt(q);
                const Poly chi = casimir_eigenvalue(cone_weight(q, l), SpinBackend::cone);
                const Poly want = scalar_chi(vt) - cst(vt, Rat(l) * Rat(l + q - 2));
                CHECK(chi == want);
            }
        }
    }

    SECTION("rank zero cone matches the scalar backend") {
        const VarTable vt(3);
        CHECK(casimir_eigenvalue(cone_weight(3, 0), SpinBackend::cone) == scalar_chi(vt));
    }

    SECTION("bulk casimir is central") {
        for (int q = 2; q <= 3; ++q) {
            DYNAMIC_SECTION("q = " << q) {
                const DiffOp c2 = bulk_casimir(q);
                BulkRealization rep(q);
                for (const auto& idx : all_basis_indices(q)) {
                    INFO("generator X_" << idx.a << idx.b);
                    CHECK(op_commutator(c2, rep.generator(idx)).is_zero());
                }
            }
        }
    }

    SECTION("bulk casimir on the pure power y^Delta") {
        for (int q = 2; q <= 4; ++q) {
            DYNAMIC_SECTION("q = " << q) {
                const VarTable vt(q);
                const TaggedField one(0, cst(vt, Rat(1)));
                const TaggedField image = apply_tagged(vt, bulk_casimir(q), one);
                CHECK(tagged_equal(vt, image, TaggedField(0, scalar_chi(vt))));
            }
        }
    }
}

TEST_CASE("tagged fields expose their boundary asymptotics") {
    const VarTable vt(2);
    const Poly x0 = var(vt, vt.x(0)), x1 = var(vt, vt.x(1));
    const Poly y = var(vt, vt.y()), dl = var(vt, vt.delta());
    const Poly one = cst(vt, Rat(1));

    SECTION("normalization factors out powers of y") {
        const TaggedField a(0, y * y * x0);
        const TaggedField b(2, x0);
        CHECK(tagged_equal(vt, a, b));
        CHECK(tagged_normalize(vt, a).k == 2);
    }

    SECTION("addition aligns mismatched offsets") {
        // y^Delta x0 + y^(Delta+1) = y^Delta (x0 + y)
        const TaggedField sum = tagged_add(vt, TaggedField(0, x0), TaggedField(1, one));
        CHECK(tagged_equal(vt, sum, TaggedField(0, x0 + y)));
    }

    SECTION("the radial derivative brings down Delta + k") {
        // d_y y^Delta = Delta y^(Delta-1)
        const TaggedField dy = tagged_dy(vt, TaggedField(0, one));
        CHECK(tagged_equal(vt, dy, TaggedField(-1, dl)));
        // d_y (y^(Delta+1) x1) = (Delta+1) y^Delta x1
        const TaggedField dy1 = tagged_dy(vt, TaggedField(1, x1));
        CHECK(tagged_equal(vt, dy1, TaggedField(0, (dl + one) * x1)));
    }

    SECTION("the bulk dilatation scales y^Delta by -Delta") {
        BulkRealization rep(2);
        const TaggedField image = apply_tagged(vt, rep.D(), TaggedField(0, one));
        CHECK(tagged_equal(vt, image, TaggedField(0, -(dl))));
    }

    SECTION("profiles pick out the leading coefficient") {
        const auto p = asymptotic_profile(vt, TaggedField(0, one + y * x0));
        REQUIRE(p.has_value());
        CHECK(p->order_offset == 0);
        CHECK(p->profile == one);

        const auto p2 = asymptotic_profile(vt, TaggedField(2, x0 * x1));
        REQUIRE(p2.has_value());
        CHECK(p2->order_offset == 2);
        CHECK(p2->profile == x0 * x1);

        CHECK_FALSE(asymptotic_profile(vt, TaggedField(3, Poly::zero(vt.nvars()))).has_value());
    }
}
