#!/usr/bin/env python3
"""Exhaustive lattice count of the projection index set, compared with the
`rfluid covering` output.

The oracle walks every (j, k). The spatial test and the k = 0 temporal test
are done in exact rational arithmetic (lambda_j^(3/2) is j or j^(3/4), and
mu_0 = ell^-2 is rational), so ties land on the inclusive side. For k >= 1
mu_k carries a factor pi^2 and floating point is used."""
import json
import math
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path


def count(C1, C2, ell, b, law):
    """C1, C2, ell are Fractions; b = 3/2 as used by the CLI for r = 3."""
    assert b == Fraction(3, 2)
    cap1 = 8 * C1 * C1
    n = 0
    j = 1
    while True:
        # lambda_j <= cap1, compared exactly: j^(2/3) <= x  <=>  j^2 <= x^3
        if law == "j^(2/3)":
            inside = Fraction(j * j) <= cap1 ** 3
        else:
            inside = Fraction(j) <= cap1 ** 2
        if not inside:
            break
        c = 8 * C2 * C2
        mu0 = 1 / (ell * ell)
        # mu_0 <= c lambda_j^(3/2)
        if law == "j^(2/3)":
            ok0 = mu0 <= c * j
        else:
            ok0 = mu0 ** 4 <= c ** 4 * j ** 3
        if ok0:
            n += 1
            cap2 = float(c) * (j if law == "j^(2/3)" else j ** 0.75)
            k = 1
            while (k * math.pi / float(ell)) ** 2 <= cap2:
                n += 1
                k += 1
        j += 1
    return n


def main(binary):
    assert count(Fraction(1), Fraction(1), Fraction(1), Fraction(3, 2), "j^(2/3)") == 75
    grid = [(Fraction(c1), Fraction(c2), Fraction(e)) for c1 in ("1", "2", "3.5") for c2 in ("1", "2.5")
            for e in ("0.25", "1", "2")]
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for law in ("j^(2/3)", "j^(1/2)"):
            cfg = Path(tmp) / "cov.ini"
            cfg.write_text(
                "[covering]\n"
                f"C1 = {', '.join(str(float(g)) for g in sorted({g[0] for g in grid}))}\n"
                f"C2 = {', '.join(str(float(g)) for g in sorted({g[1] for g in grid}))}\n"
                f"ell = {', '.join(str(float(g)) for g in sorted({g[2] for g in grid}))}\n"
                f"r = 3\nlambda_model = {law}\n")
            out = Path(tmp) / "out"
            subprocess.run([binary, "covering", "--config", str(cfg), "--out", str(out)],
                           check=True, capture_output=True)
            reports = json.loads((out / "covering.json").read_text())["reports"]
            assert len(reports) == len(grid)
            for rep in reports:
                want = count(Fraction(str(rep["C1"])), Fraction(str(rep["C2"])), Fraction(str(rep["ell"])),
                             Fraction(3, 2), law)
                ok = rep["enumerated_rank"] == want
                failures += not ok
                print(f"{'ok  ' if ok else 'FAIL'} {law} C1={rep['C1']} C2={rep['C2']} ell={rep['ell']}: "
                      f"{rep['enumerated_rank']} vs {want}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
