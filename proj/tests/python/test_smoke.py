import cmath
from fractions import Fraction

import pytest

import ffhyper


def test_field_basics():
    k = ffhyper.field(9)
    assert (k.p, k.r, k.q, k.N) == (3, 2, 9, 24)
    g = k.generator
    seen = set()
    x = 1
    for _ in range(8):
        seen.add(x)
        x = k.mul(x, g)
    assert seen == set(range(1, 9))
    assert k.element(k.coeffs(5)) == 5
    with pytest.raises(ValueError):
        ffhyper.field(6)


def test_gauss_sum_norm():
    k = ffhyper.field(7)
    assert k.gauss(0).as_fraction() == 1
    for j in range(1, 6):
        g = k.gauss(j)
        assert abs(abs(complex(g)) ** 2 - 7) < 1e-9
        # g(chi) g(conj chi) = chi(-1) q
        prod = (g * k.gauss(6 - j)).as_fraction()
        assert prod == (7 if j % 2 == 0 else -7)


def test_jacobi_matches_direct_sum():
    k = ffhyper.field(8)
    for a in range(7):
        for b in range(7):
            assert k.jacobi([a, b]) == k.jacobi_direct([a, b])


def test_hyper_exact_and_float_agree():
    k = ffhyper.field(11)
    for x in range(11):
        e = complex(k.hyper([3, 4], [7], x))
        f = k.hyper_float([3, 4], [7], x)
        assert cmath.isclose(e, f, rel_tol=1e-9, abs_tol=1e-9)


def test_lauricella_shapes():
    k = ffhyper.field(5)
    v = k.lauricella("A", [1], [2, 3], [1, 2], [2, 3])
    assert isinstance(v, ffhyper.Cyclotomic)
    assert all(isinstance(c, Fraction) for c in v.coefficients())
    assert cmath.isclose(complex(v), k.lauricella_float("A", [1], [2, 3], [1, 2], [2, 3]), abs_tol=1e-9)
    with pytest.raises(ValueError):
        k.lauricella("E", [1], [2], [3], [1])
    with pytest.raises(ValueError):
        k.lauricella("A", [1], [2, 3], [1, 2], [2])


def test_check_and_suite():
    ids = [d["id"] for d in ffhyper.identities()]
    assert "euler-gauss" in ids and len(ids) == len(set(ids))
    r = ffhyper.check(5, "gauss-inversion")
    assert r["status"] == "pass" and r["checked"] == 4
    s = ffhyper.check(7, "int-FA", mode="sample", samples=30, seed=3)
    assert s["checked"] + s["skipped"] == 30
    with pytest.raises(ValueError):
        ffhyper.check(5, "no-such-id")
    a = ffhyper.run_suite([3, 4], ["tb-i", "F2-half-half"], mode="sample", samples=10)
    b = ffhyper.run_suite([3, 4], ["tb-i", "F2-half-half"], mode="sample", samples=10)
    assert a == b and len(a["digest"]) == 64
    assert [x["q"] for x in a["reports"]] == [3, 3, 4, 4]


def test_cli_in_process():
    code, out, err = ffhyper.run_cli(["--q-list", "5", "--identity", "euler-gauss", "--json"])
    assert code == 0 and '"status": "pass"' in out
    code, _, err = ffhyper.run_cli(["--q-list", "6", "--all"])
    assert code == 2 and "prime power" in err
