import math

import numpy as np
import pytest

from arithcap.analytic import PolyMap, SeriesMap, jet_cap_norm, preimages, taylor_jet
from arithcap.curves import DomainSpec, TrigCurve, circle_domain, perturbed_circle_domain
from arithcap.errors import (
    AllCoefficientsBelowTolerance,
    AsymmetricDomain,
    BoundaryZero,
    CenterNotZero,
    ConstantMap,
    WrongVanishingOrder,
)
from arithcap.greens import solve_green
from arithcap.overflow import (
    arakelov_degree,
    boundary_energy,
    classical_inverse_check,
    identity_residual,
    log_abs_boundary_integral,
    overflow,
    degree_consistency_residual,
    pushforward_green,
    symmetry_check,
)

RHO = 1.5
DISK = circle_domain(RHO)
Z = PolyMap([0, 1])
Z2 = PolyMap([0, 0, 1])
ZQ = PolyMap([0, -0.5, 1])  # z(z - 0.5)


@pytest.fixture(scope="module")
def disk_sol():
    return solve_green(DISK, 256)


@pytest.fixture(scope="module")
def pert_sol():
    return solve_green(perturbed_circle_domain(1.0, 0.05, 3), 256)


class TestJets:
    def test_z2(self):
        jet = taylor_jet(Z2, DISK, 6)
        assert jet.order == 2
        assert abs(jet.leading - 1) < 1e-12

    def test_shifted(self):
        jet = taylor_jet(ZQ, DISK, 6)
        assert jet.order == 1
        assert abs(jet.leading + 0.5) < 1e-12

    def test_constant_map(self):
        with pytest.raises(AllCoefficientsBelowTolerance):
            taylor_jet(PolyMap([3.0]), DISK, 6)

    def test_series_map(self):
        f = SeriesMap([0, 0, 0, 2.0], center=0, radius=1.0)
        jet = taylor_jet(f, DISK, 6)
        assert jet.order == 3 and abs(jet.leading - 2.0) < 1e-10

    def test_cap_norm_convention(self, disk_sol):
        jet = taylor_jet(Z, DISK, 4)
        assert abs(jet_cap_norm(jet, disk_sol) - math.log(RHO)) < 1e-9
        jet2 = taylor_jet(Z2, DISK, 4)
        assert abs(jet_cap_norm(jet2, disk_sol) - 2 * math.log(RHO)) < 1e-9


class TestPreimages:
    def test_simple_pair(self):
        out = preimages(PolyMap([-0.25, 0, 1]), 0.0, DISK)
        pts = sorted(round(p.real, 9) for p, _, _ in out)
        assert pts == [-0.5, 0.5]
        assert all(m == 1 and inside for _, m, inside in out)

    def test_double_root(self):
        out = preimages(Z2, 0.0, DISK)
        assert len(out) == 1
        assert out[0][1] == 2

    def test_outside_flag(self):
        out = preimages(Z2, 4.0, DISK)
        assert all(not inside for _, _, inside in out)

    def test_constant(self):
        with pytest.raises(ConstantMap):
            preimages(PolyMap([2.0]), 1.0, DISK)


class TestPushforward:
    def test_disk_z2(self, disk_sol):
        want = 2 * math.log(3)  # g(0.5) + g(-0.5) with g = log(rho/|z|)
        assert abs(pushforward_green(disk_sol, Z2, 0.25) - want) < 1e-9

    def test_outside_zero(self, disk_sol):
        assert pushforward_green(disk_sol, Z2, 4.0) == 0.0

    def test_max_formula(self, disk_sol):
        rng = np.random.default_rng(5)
        for _ in range(20):
            w = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if abs(w) < 1e-3:
                continue
            want = max(0.0, math.log(RHO ** 2 / abs(w)))
            assert abs(pushforward_green(disk_sol, Z2, w) - want) < 1e-6


class TestBoundaryIntegral:
    def test_identity_map(self, disk_sol):
        assert abs(log_abs_boundary_integral(disk_sol, Z) - math.log(RHO)) < 1e-10

    def test_jensen_mean_value(self, disk_sol):
        # log|z - a| integrates to log rho for |a| < rho
        for a in (0.3, -0.8j, 0.5 + 0.5j):
            f = PolyMap([-a, 1])
            assert abs(log_abs_boundary_integral(disk_sol, f) - math.log(RHO)) < 1e-9

    def test_boundary_zero_guard(self, disk_sol):
        f = PolyMap([-RHO, 1])  # vanishes at z = rho, a boundary node
        with pytest.raises(BoundaryZero):
            log_abs_boundary_integral(disk_sol, f, nodes=256)

    def test_series_map_evaluation_route(self, disk_sol):
        # truncated-series maps are allowed wherever evaluation suffices
        f = SeriesMap([0, 1], center=0, radius=2.0)
        assert abs(log_abs_boundary_integral(disk_sol, f) - math.log(RHO)) < 1e-10
        assert symmetry_check(f, DISK) < 1e-12


class TestOverflow:
    @pytest.mark.parametrize("f", [Z, Z2], ids=["z", "z^2"])
    @pytest.mark.parametrize("rho", [0.8, 1.5])
    def test_monomials_vanish_both_routes(self, f, rho):
        sol = solve_green(circle_domain(rho), 256)
        assert abs(overflow(sol, f, "def")) < 1e-5
        assert abs(overflow(sol, f, "energy")) < 1e-5

    def test_cross_route_perturbed(self, pert_sol):
        d = overflow(pert_sol, ZQ, "def")
        e = overflow(pert_sol, ZQ, "energy")
        assert abs(d - e) < 1e-4

    def test_energy_z2_exact_shift_split(self, disk_sol):
        # boundary energy of z^2 on the centered disk is exactly 2 log rho
        assert abs(boundary_energy(disk_sol, Z2) - 2 * math.log(RHO)) < 1e-10

    def test_constant_rejected(self, disk_sol):
        with pytest.raises(ConstantMap):
            overflow(disk_sol, PolyMap([1.0]), "def")


class TestIdentities:
    def test_prop35_value(self, disk_sol):
        # both sides equal 2 ln 1.5
        lhs = log_abs_boundary_integral(disk_sol, ZQ)
        assert abs(lhs - 2 * math.log(RHO)) < 1e-9
        assert identity_residual(disk_sol, ZQ, "prop35") < 1e-6

    def test_prop34_lhs_structure(self, disk_sol):
        # roots of f(z) = f(1.0) are 1.0 and -0.5
        lhs = pushforward_green(disk_sol, ZQ, complex(ZQ(np.array([1.0]))[0]))
        want = disk_sol.green(1.0) + disk_sol.green(-0.5)
        assert abs(lhs - want) < 1e-9

    @pytest.mark.parametrize("which", ["prop34", "cor36"])
    def test_pointwise_residuals(self, disk_sol, which):
        # radius 0.6 stays clear of the roots of f at 0 and 0.5
        for k in range(20):
            x = 0.6 * np.exp(2j * np.pi * k / 20)
            assert identity_residual(disk_sol, ZQ, which, x=complex(x)) < 1e-5

    def test_center_not_zero(self, disk_sol):
        with pytest.raises(CenterNotZero):
            identity_residual(disk_sol, PolyMap([1.0, 1.0]), "prop35")

    def test_residuals_perturbed_domain(self, pert_sol):
        assert identity_residual(pert_sol, ZQ, "prop35") < 1e-5
        for k in range(10):
            x = 0.4 * np.exp(2j * np.pi * k / 10)
            assert identity_residual(pert_sol, ZQ, "cor36", x=complex(x)) < 1e-5


class TestClassical:
    def test_unit_disk_exact(self):
        res = classical_inverse_check(1.0, samples=20)
        assert res.max_residual < 1e-6
        assert abs(res.log_capacity) < 1e-9

    @pytest.mark.parametrize("rho", [0.6, 1.7])
    def test_capacity_is_radius(self, rho):
        res = classical_inverse_check(rho, samples=20)
        assert abs(res.log_capacity - math.log(rho)) < 1e-5
        assert res.max_residual < 1e-6

    def test_far_field_bounded(self):
        sol = solve_green(circle_domain(1.0 / 1.3), 128)
        for z in (1e3, 1e6 * 1j):
            G = sol.green(1.0 / z)
            pot = math.log(abs(z))  # potential of a compact set at huge |z|
            assert abs(G - sol.robin_c - pot) < 0.01


class TestSymmetry:
    def test_real_coefficients_pass(self):
        assert symmetry_check(PolyMap([0, 1, 0, 1]), DISK) < 1e-12

    def test_iz2_deviation(self):
        dev = symmetry_check(PolyMap([0, 0, 1j]), DISK, samples=256)
        assert abs(dev - 2 * RHO ** 2) < 1e-8

    def test_tilted_ellipse_rejected(self):
        rot = np.exp(0.3j)
        tilted = DomainSpec([TrigCurve({1: 0.95 * rot, -1: 0.25 * rot})], 0)
        with pytest.raises(AsymmetricDomain):
            symmetry_check(PolyMap([0, 1]), tilted)

    def test_imaginary_center_rejected(self):
        dom = circle_domain(1.0, O=0.3j)
        with pytest.raises(AsymmetricDomain):
            symmetry_check(PolyMap([0, 1]), dom)


class TestArakelov:
    @pytest.mark.parametrize("rho,pc", [(0.8, True), (1.25, False)])
    def test_degree_and_flag(self, rho, pc):
        sol = solve_green(circle_domain(rho), 256)
        jet = taylor_jet(PolyMap([0, 1]), circle_domain(rho), 4)
        res = arakelov_degree(sol, jet)
        assert abs(res.degree - math.log(rho)) < 1e-9
        assert res.pseudoconvex is pc

    def test_wrong_order(self, disk_sol):
        jet = taylor_jet(Z2, DISK, 4)
        with pytest.raises(WrongVanishingOrder):
            arakelov_degree(disk_sol, jet)

    def test_degree_consistency(self):
        sol = solve_green(circle_domain(0.8), 256)
        for e in (1, 2, 3):
            assert degree_consistency_residual(sol, e) < 1e-5
