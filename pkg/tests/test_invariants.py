import random

import pytest

from conftest import TXY, XY, XYZ, random_poly
from lndcert.derivation import Algebra, Derivation, UnstableDerivationError, apply, apply_ratfunc
from lndcert.grobner import subalgebra_membership
from lndcert.invariants import (ChainError, RankWitnessFailure, TruncationSpec, chain_certificate,
                                find_rank_witness, kernel_basis_bounded, kernel_intersection_bounded,
                                ml_certificate, plinth_bounded, poly_det, poly_rank, rank_witness,
                                subalgebra_window, tightness_check, window_monomials)
from lndcert.linalg import same_span
from lndcert.poly import Poly, RatFunc, VarTable, exact_quotient, poly_gcd
from oracles import brute_force_kernel

X, Y = Poly.var(XY, "x"), Poly.var(XY, "y")
T, TX, TY = (Poly.var(TXY, n) for n in ("t", "x", "y"))
B4 = Algebra(TXY, (TX, TY, T * TX, T * TY), "B")
DELTA1 = Derivation(TXY, {"x": TY})
DELTA2 = Derivation(TXY, {"y": TX})
D3 = Derivation.partial(TXY, "t")


def strs(ps):
    return [str(p) for p in ps]


# --- kernels ---------------------------------------------------------------

def test_kernel_examples():
    assert strs(kernel_basis_bounded(Derivation(XY, {"x": Y}), TruncationSpec(2)).basis) == ["1", "y", "y^2"]
    assert set(strs(kernel_basis_bounded(D3, TruncationSpec(1)).basis)) == {"1", "x", "y"}
    assert kernel_basis_bounded(Derivation.zero(XY), TruncationSpec(1)).dimension == 3
    both = kernel_intersection_bounded([Derivation(XY, {"x": Y}), Derivation(XY, {"y": X})], TruncationSpec(2))
    assert strs(both.basis) == ["1"]
    X1 = VarTable(("x",))
    assert strs(kernel_basis_bounded(Derivation.partial(X1, "x"), TruncationSpec(3)).basis) == ["1"]
    assert kernel_intersection_bounded([], TruncationSpec(2), XY).dimension == 6


def test_kernel_basis_matches_oracle_on_fixed_cases():
    cases = [
        [Derivation(XYZ, {"x": Poly.var(XYZ, "y"), "y": Poly.var(XYZ, "z")})],
        [Derivation(XYZ, {"x": Poly.var(XYZ, "z") ** 2})],
        [Derivation(XY, {"x": Y}), Derivation(XY, {"y": X})],
    ]
    for ds in cases:
        table = ds[0].table
        ours = kernel_intersection_bounded(ds, TruncationSpec(3)).basis
        oracle = brute_force_kernel(ds, table, 3)
        assert len(ours) == len(oracle)
        assert same_span(ours, oracle, table)


def test_kernel_monotone_in_degree():
    rng = random.Random(2)
    for _ in range(5):
        D = Derivation(XYZ, {n: random_poly(rng, XYZ, 2, 2) for n in "xyz"})
        dims = [kernel_basis_bounded(D, TruncationSpec(d)).dimension for d in range(4)]
        assert dims == sorted(dims)


# --- windows and ML certificates -------------------------------------------

def test_subalgebra_windows():
    assert strs(subalgebra_window(Algebra(XY, (X, Y)), 2).basis) == ["1", "y", "x", "y^2", "x*y", "x^2"]
    assert len(subalgebra_window(Algebra(XY, (X, X)), 1).basis) == 2
    # 1 + 4 generators + 9 distinct degree-two products (tx*y = ty*x)
    assert len(subalgebra_window(B4, 2).basis) == 14


def test_window_monotone_in_length():
    dims = [len(subalgebra_window(B4, L).basis) for L in range(4)]
    assert dims == sorted(dims) and dims[0] == 1


def test_ml_certificates():
    assert ml_certificate(B4, [DELTA1, DELTA2], 4).constants_only
    assert ml_certificate(B4, [DELTA1, DELTA2, D3], 3).constants_only
    extra = ml_certificate(Algebra(XY, (X, Y)), [Derivation.partial(XY, "x")], 3)
    assert extra.outcome == "extra_elements"
    assert {"y", "y^2", "y^3"} <= set(strs(extra.extra_elements))
    with pytest.raises(UnstableDerivationError):
        ml_certificate(Algebra(TXY, (T * TX,)), [D3], 2)


def test_ml_monotone_in_derivation_set():
    ds = [DELTA1, DELTA2, D3]
    for L in (2, 3):
        for i in range(3):
            small = ml_certificate(B4, [ds[i]], L)
            for j in range(3):
                big = ml_certificate(B4, [ds[i], ds[j]], L)
                assert len(big.kernel) <= len(small.kernel)
                if small.constants_only:
                    assert big.constants_only


def test_algebra_kernel_intersection_is_kernel_window():
    # elements of B killed by the derivations lie in the ambient kernel window
    cert = ml_certificate(B4, [D3], 2)
    ambient = kernel_basis_bounded(D3, TruncationSpec(4)).basis
    for f in cert.kernel:
        assert apply(D3, f).is_zero()
        assert same_span(list(ambient) + [f], ambient, TXY)


def test_fraction_kernel_elements_come_from_kernel_polynomials():
    # over a UFD, if D(u/v) = 0 with gcd(u, v) = 1 then D(u) = D(v) = 0
    rng = random.Random(31)
    D = Derivation(XYZ, {"x": Poly.var(XYZ, "y")})
    ker = kernel_basis_bounded(D, TruncationSpec(2)).basis
    checked = 0
    for _ in range(40):
        u = sum((k * rng.randint(-2, 2) for k in ker), Poly.zero(XYZ))
        w = sum((k * rng.randint(-2, 2) for k in ker), Poly.zero(XYZ))
        other = random_poly(rng, XYZ, 2, 2)
        for num, den in ((u, w), (u * other, w * other), (other, w)):
            if num.is_zero() or den.is_zero():
                continue
            f = RatFunc(num, den)
            if apply_ratfunc(D, f).is_zero():
                assert poly_gcd(f.num, f.den).is_constant()
                assert apply(D, f.num).is_zero() and apply(D, f.den).is_zero()
                checked += 1
    assert checked > 10


def test_quotients_in_algebra_lie_in_kernel_window():
    # u/v with u, v kernel elements and u/v in B: its polynomial form is killed too
    D = D3
    u, w = TX * TY * (TX + TY), TX + TY
    q = exact_quotient(u, w)
    assert q is not None and subalgebra_membership(q, B4).member
    assert apply(D, q).is_zero()


# --- plinth and tightness --------------------------------------------------

def test_plinth_examples():
    D = Derivation(XY, {"y": X})
    assert strs(plinth_bounded(D, TruncationSpec(3)).basis) == ["x", "x^2", "x^3"]
    assert tightness_check(D, TruncationSpec(3)).tight
    assert strs(plinth_bounded(Derivation.partial(XY, "y"), TruncationSpec(3)).basis) == ["1", "x", "x^2"]
    assert tightness_check(Derivation.partial(XY, "y"), TruncationSpec(3)).tight
    XYZW = VarTable(("x", "y", "z", "w"))
    x, y = Poly.var(XYZW, "x"), Poly.var(XYZW, "y")
    E = Derivation(XYZW, {"z": x, "w": y})
    pl = plinth_bounded(E, TruncationSpec(2))
    assert set(strs(pl.basis)) == {"x", "y", "x^2", "x*y", "y^2"}
    assert tightness_check(E, TruncationSpec(2)).tight


def test_plinth_elements_are_images_and_kernel_elements():
    rng = random.Random(8)
    for _ in range(5):
        D = Derivation(XYZ, {"x": random_poly(rng, XYZ, 1, 2), "y": Poly.var(XYZ, "z")})
        pl = plinth_bounded(D, TruncationSpec(2))
        window = window_monomials(XYZ, 2)
        images = [apply(D, m) for m in window]
        for p in pl.basis:
            assert apply(D, p).is_zero()
            assert same_span(images + [p], images, XYZ)


# --- rank --------------------------------------------------------------------

def test_rank_witness_examples():
    dx, dy = Derivation.partial(XY, "x"), Derivation.partial(XY, "y")
    assert rank_witness([dx, dy], [X, Y]).determinant == Poly.const(XY, 1)
    w = rank_witness([DELTA1, DELTA2, D3], [TX, TY, T * TX])
    assert str(w.determinant) == "x^2*y" and w.rank == 3
    with pytest.raises(RankWitnessFailure):
        rank_witness([dx, dx], [X, Y])
    with pytest.raises(ValueError):
        rank_witness([dx], [X, Y])


def test_find_rank_witness():
    dx, dy = Derivation.partial(XY, "x"), Derivation.partial(XY, "y")
    assert find_rank_witness([dx, dy], 1).elements == (X, Y)
    w = find_rank_witness([DELTA1, DELTA2, D3], 2)
    assert not w.determinant.is_zero()
    w = find_rank_witness([DELTA1, DELTA2, D3], 2, algebra=B4)
    assert str(w.determinant) == "x^2*y"
    assert all(subalgebra_membership(b, B4).member for b in w.elements)
    assert find_rank_witness([Derivation.zero(XY)], 2) is None


def test_poly_det_matches_cofactor_expansion():
    rng = random.Random(4)
    for _ in range(10):
        m = [[random_poly(rng, XY, 2, 2, nonzero=False) for _ in range(3)] for _ in range(3)]
        cofactor = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        assert poly_det(m, XY) == cofactor
        assert (poly_rank(m, XY) == 3) == (not cofactor.is_zero())


# --- chains ------------------------------------------------------------------

def _xyz_chain(witnesses):
    x, y, z = (Poly.var(XYZ, n) for n in "xyz")
    d = {n: Derivation.partial(XYZ, n) for n in "xyz"}
    levels = [
        (Algebra(XYZ, ()), [d["x"], d["y"], d["z"]]),
        (Algebra(XYZ, (x,)), [d["y"], d["z"]]),
        (Algebra(XYZ, (x, y)), [d["z"]]),
        (Algebra(XYZ, (x, y, z)), []),
    ]
    return chain_certificate(levels, witnesses)


def test_chain_certificates():
    x, y, z = (Poly.var(XYZ, n) for n in "xyz")
    assert _xyz_chain([x, y, z]).length == 3
    with pytest.raises(ChainError) as info:
        _xyz_chain([x, x, z])
    assert info.value.index == 2
    x2, y2 = X, Y
    two = chain_certificate([(Algebra(XY, ()), [Derivation.partial(XY, "x"), Derivation.partial(XY, "y")]),
                             (Algebra(XY, (x2,)), [Derivation.partial(XY, "y")]),
                             (Algebra(XY, (x2, y2)), [])], [x2, y2])
    assert two.length == 2 <= len(XY)


def test_chain_rejects_generator_outside_kernel():
    x = Poly.var(XYZ, "x")
    with pytest.raises(ChainError) as info:
        chain_certificate([(Algebra(XYZ, ()), []), (Algebra(XYZ, (x,)), [Derivation.partial(XYZ, "x")])], [x])
    assert info.value.index == 1


def test_chain_length_bounded_by_rank():
    x, y, z = (Poly.var(XYZ, n) for n in "xyz")
    cert = _xyz_chain([x, y + x, z - y])
    w = find_rank_witness([Derivation.partial(XYZ, n) for n in "xyz"], 1)
    assert cert.length <= w.rank <= len(XYZ)
