#!/usr/bin/env python3
"""Smoke test for the hermann_py extension module.

Locates the compiled cdylib under target/, stages it under a temporary
directory with the importable name, and exercises the main bindings.
Builds the extension first if it is missing.
"""

import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def find_cdylib() -> Path:
    candidates = []
    for profile in ("debug", "release"):
        for ext in ("so", "dylib"):
            p = REPO / "target" / profile / f"libhermann_py.{ext}"
            if p.exists():
                candidates.append(p)
    if not candidates:
        subprocess.run(
            ["cargo", "build", "-p", "hermann-py"], cwd=REPO, check=True
        )
        return find_cdylib()
    return max(candidates, key=lambda p: p.stat().st_mtime)


def ok(label: str) -> None:
    print(f"ok - {label}")


def main() -> None:
    lib = find_cdylib()
    with tempfile.TemporaryDirectory() as tmp:
        staged = Path(tmp) / ("hermann_py" + lib.suffix)
        shutil.copy2(lib, staged)
        sys.path.insert(0, tmp)
        import hermann_py as hp

        names = {name for name, _, _ in hp.catalog()}
        assert names == {"su-pq-so", "su-so-diag", "su-ad-ad"}, names
        ok("catalog lists the three families")

        assert abs(hp.parse_angle("pi/8") - math.pi / 8) < 1e-15
        assert hp.format_angle(math.pi / 4) == "pi/4"
        ok("angle parsing and formatting round-trip")

        e = hp.Entry("su-pq-so", {"p": 2, "q": 1})
        assert e.t_dim == 1
        dims = e.dims()
        assert dims["dim_g"] == 8 and dims["dim_m"] == 4, dims
        gold_ok, mismatches = e.golden()
        assert gold_ok, mismatches
        ok("su-pq-so(2,1) builds and matches its closed form")

        roots = e.roots()
        assert len(roots) == 2
        by_len = {round(sum(a * a for a in alpha)): (m, eps) for alpha, m, eps in roots}
        assert by_len[1][0] == 2 and by_len[4][0] == 1, by_len
        assert [round(a / math.pi, 6) for a, _ in by_len[4][1]] == [1.0]
        ok("root multiplicities and unit-circle components are exposed")

        w = [math.pi / 8]
        v = e.verdicts(w)
        assert v.regular and v.minimal and v.austere_pf
        assert not v.austere_finite and not v.totally_geodesic
        assert v.mean_curvature_norm < 1e-9
        ok("verdicts at pi/8: minimal, lift-austere, not finite-austere")

        spec = sorted(val for val, _ in e.finite_spectrum(w, [1.0]))
        expect = sorted([-(math.sqrt(2) + 1), math.sqrt(2) - 1, 2.0])
        assert all(abs(a - b) < 1e-12 for a, b in zip(spec, expect)), spec
        assert e.tangent_normal(w) == (3, 1)
        ok("finite spectrum at pi/8 matches the closed form")

        fams = e.pf_families(w, [1.0])
        assert len(fams) == 3 and all(kind == "arctan" for kind, *_ in fams)
        thetas = sorted(theta for _, _, theta, _ in fams)
        expect_t = sorted([math.pi / 8, math.pi / 8 + math.pi / 2, 3 * math.pi / 4])
        assert all(abs(a - b) < 1e-12 for a, b in zip(thetas, expect_t)), thetas
        ok("path-lifted spectrum families carry the shifted phases")

        vecs = e.curvature_vectors([math.pi / 4])
        firsts = sorted(v[0] for v, _ in vecs)
        assert len(vecs) == 2 and sum(m for _, m in vecs) == 2, vecs
        assert abs(firsts[0] + 1) < 1e-12 and abs(firsts[1] - 1) < 1e-12, vecs
        ok("curvature vectors merge into the opposite pair at pi/4")

        verified, checked, _skipped = e.verify(40)
        assert verified and checked >= 40
        ok(f"implication suite passes on {checked} sample points")

        diag = hp.Entry("sigma_eq_tau", {"n": 3})
        assert diag.name == "su-so-diag"
        dv = diag.verdicts([0.0] * diag.t_dim)
        assert dv.totally_geodesic and dv.austere_finite and dv.austere_pf
        ok("alias entry resolves and the origin orbit is totally geodesic")

        devs = [hp.truncation_deviation(1.0, math.pi / 8, n, 5) for n in (25, 50, 100)]
        assert devs[0] > devs[1] > devs[2], devs
        assert devs[2] < 0.1
        assert hp.perp_deviation(1.0, 100) < 1e-12
        assert len(hp.top_block_eigenvalues(1.0, math.pi / 8, 10)) == 21
        ok("truncated blocks converge to the closed-form spectra")

        try:
            hp.Entry("nope", {})
        except ValueError:
            ok("unknown entries raise ValueError")
        else:
            raise AssertionError("unknown entry was accepted")

        try:
            e.verdicts([0.1, 0.2])
        except ValueError:
            ok("dimension mismatches raise ValueError")
        else:
            raise AssertionError("wrong-dimension point was accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
