"""Quick end-to-end check of the pyrelkit extension module."""
from pathlib import Path

import pyrelkit as rk

DATA = Path(__file__).resolve().parents[1] / "crates" / "relkit" / "tests" / "data"


def main():
    swap = rk.Relation(["a", "b"], ["a", "b"], [("a", "b"), ("b", "a")])
    assert swap.then(swap) == rk.Relation.identity(["a", "b"])
    assert swap.dagger() == swap and swap.is_function() and len(swap) == 2

    z2 = rk.Frobenius.from_json((DATA / "z2.json").read_text())
    report = z2.check()
    assert report.verdict and z2.unit() == ["0"], report
    g = z2.to_groupoid()
    assert g.check() and rk.Frobenius.from_groupoid(g) == z2

    bad = rk.Frobenius(["0", "1"], [("0", "0", "1")])
    assert not bad.check().verdict

    c5 = rk.RelGroupoid.cyclic_counterexample(5)
    r = c5.check()
    assert r.holds("A.1") is True and r.holds("A.5") is False
    assert any(law == "A.5" for law, _ in r.witnesses)

    parity = rk.RelGroupoid.parity(8)
    assert parity.check() and parity.regularity()
    reduced = parity.reduce()
    assert (len(reduced.objects), len(reduced.arrows)) == (1, 2)
    assert parity.opposite().opposite() == parity

    v = rk.SympSpace.standard(1)
    line = rk.Subspace(2, [["1", "0"]])
    assert v.classify(line) == "lagrangian" and v.orthogonal(line) == line
    assert v.reduce(rk.Subspace(2, [["1", "0"], ["0", "1"]])).dim == 2
    assert v.pairing(["1", "0"], ["0", "1"]) == "1"

    eps = [[["0"] * 3 for _ in range(3)] for _ in range(3)]
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        eps[i][j][k], eps[j][i][k] = "1", "-1"
    so3 = rk.Bivector.from_lie_constants(eps)
    assert so3.is_poisson() and so3.jacobi_residual() == []
    perturbed = rk.Bivector.from_json((DATA / "perturbed.json").read_text())
    assert not perturbed.is_poisson()
    assert perturbed.jacobi_residual() == [((1, 2, 3), "x1")]

    code, out, _ = rk.run(["check", "frobenius", str(DATA / "z2.json")])
    assert code == 0 and "U={0}" in out
    assert rk.run(["nonsense"])[0] == 2
    assert rk.document_kind((DATA / "so3.json").read_text()) == "lie-constants"
    print("pyrelkit smoke test: ok")


if __name__ == "__main__":
    main()
