"""Check suites behind ``knotslice verify``; each returns a CheckResult."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import combinatorics as comb
from .braid import BraidWord, unlink
from .fibered import (
    C_GRID,
    EXPECTED_DIM,
    alpha_for_c,
    gradient_bound_scan,
    moment_fiber,
    trefoil_intersection_report,
    trefoil_paths,
)
from .homology import EXAMPLES, check_conjecture_euler, kr_trefoil, kr_trefoil_list
from .laurent import quantum_integer
from .skein import check_markov, check_skein, kauffman_oracle, sl_n_polynomial
from .slice import BipartiteConfig, chi_pi, config_error, newl_margin, sample_fiber
from .transport import NON_VANISHING, off_orbit_point, orbit_distance, rex_deviation, vanishing_classification


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "seconds": self.seconds, "detail": self.detail}


def _fuzz_braid(rng: random.Random, max_strands: int, max_len: int, min_len: int = 0) -> BraidWord:
    m = rng.randint(2, max_strands)
    length = rng.randint(min_len, max_len)
    return BraidWord(m, tuple(rng.choice((1, -1)) * rng.randint(1, m - 1) for _ in range(length)))


def check_skein_suite(trials=200, seed=0, ns=(1, 2, 3)) -> dict:
    rng = random.Random(seed)
    failures = []
    for i in range(trials):
        b = _fuzz_braid(rng, 4, 8, min_len=1)
        site = rng.randrange(len(b))
        n = ns[i % len(ns)]
        if not check_skein(b, site, n):
            failures.append([b.to_text(), site, n])
    return {"trials": trials, "failures": failures}


def check_markov_suite(trials=100, seed=0, ns=(2, 3)) -> dict:
    rng = random.Random(seed)
    failures = []
    for i in range(trials):
        b = _fuzz_braid(rng, 3, 6)
        n = ns[i % len(ns)]
        if not check_markov(b, n, trials=1, seed=rng.randrange(2 ** 31), max_moves=4):
            failures.append([b.to_text(), n])
    return {"trials": trials, "failures": failures}


def check_unlink_suite() -> dict:
    failures = []
    for n in range(1, 5):
        for m in range(1, 4):
            if sl_n_polynomial(unlink(m), n) != quantum_integer(n) ** m:
                failures.append([n, m])
    return {"failures": failures}


def check_oracle_suite(trials=50, seed=0) -> dict:
    rng = random.Random(seed)
    failures = []
    for _ in range(trials):
        b = _fuzz_braid(rng, 4, 8)
        if sl_n_polynomial(b, 2) != kauffman_oracle(b):
            failures.append(b.to_text())
    return {"trials": trials, "failures": failures}


def check_schensted_suite(max_m=6, max_n=4) -> dict:
    rows = []
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            k = comb.kostka(comb.rectangle(m, n), comb.thin_thick_type(m, n).parts)
            rows.append([m, n, k, comb.lis_count(m, n)])
    catalan_ok = [comb.kostka(comb.rectangle(m, 2), comb.thin_thick_type(m, 2).parts) for m in range(1, 7)]
    return {"rows": rows, "catalan": catalan_ok,
            "failures": [r for r in rows if r[2] != r[3]] + ([] if catalan_ok == [1, 2, 5, 14, 42, 132] else ["catalan"])}


def breaking_examples(m: int, n: int) -> dict[str, tuple[comb.Partition, comb.Partition] | None]:
    """The five example (pi, sigma) pairs; None where the example's hypothesis excludes (m, n)."""
    P = comb.Partition
    out = {"ex1": (P.of(2, 1, 1), P.of(2, 2))}
    out["ex2"] = (P((1,) * m + (n - 1,) * m), P((1,) * (m - 1) + (n - 1,) * (m - 1) + (n,)))
    out["ex3"] = (P((1,) * (m + n - 1) + (n - 1,) * (m - 1)), P((1,) * (m - 1) + (n - 1,) * (m - 1) + (n,)))
    out["ex4"] = (P((1,) * m + (n - 1,) * m), P((1,) * (m - 2) + (2,) + (n - 1,) * m)) if n > 3 else None
    out["ex5"] = (P((1,) * m + (n - 1,) * m), P((1,) * (m - 2) + (n - 1,) * (m - 1) + (n + 1,)))
    return out


def expected_breaking_count(name: str, m: int) -> int:
    return {"ex1": 2, "ex2": 1, "ex3": m, "ex4": 1, "ex5": 1}[name]


def check_breakings_suite(ms=range(2, 5), ns=range(3, 6)) -> dict:
    failures = []
    for m in ms:
        for n in ns:
            for name, pair in breaking_examples(m, n).items():
                if pair is None:
                    continue
                got = len(comb.breakings(*pair))
                if got != expected_breaking_count(name, m):
                    failures.append({"example": name, "m": m, "n": n, "count": got,
                                     "expected": expected_breaking_count(name, m)})
    return {"failures": failures}


def check_spaltenstein_suite() -> dict:
    failures = []
    for m in range(1, 7):
        for n in range(1, 6):
            if comb.spaltenstein_dim(comb.rectangle(m, n), comb.thin_thick_type(m, n)) != 2 * m * (n - 1):
                failures.append([m, n])
    return {"failures": failures}


def check_rex_suite(ns=(2, 3, 4), t=0.5, seed=0) -> dict:
    devs, controls, failures = {}, {}, []
    for n in ns:
        devs[n] = rex_deviation(n, t, 0.1, seed=seed + n)
        if devs[n] > 1e-6:
            failures.append(["deviation", n])
        Y = off_orbit_point(n, t, 1.0, seed=seed + n)
        res = vanishing_classification(n, Y, t)
        controls[n] = {"orbit_distance_lower_bound": orbit_distance(Y, n, t), "classification": res.classification,
                       "norms": {str(k): v for k, v in res.norms.items()}}
        if res.classification != NON_VANISHING:
            failures.append(["control", n])
    return {"deviation": devs, "controls": controls, "failures": failures}


def check_gradient_suite(ns=(3, 4), ds=(0.1, 0.5), samples=1000, seed=0) -> dict:
    rows, failures = [], []
    for n in ns:
        for d in ds:
            a = gradient_bound_scan(n, d, samples, seed=seed).nu
            b = gradient_bound_scan(n, d, 2 * samples, seed=seed + 1).nu
            ok = a > 0 and b > 0 and max(a, b) <= 2 * min(a, b)
            rows.append({"n": n, "d": d, "nu": a, "nu_doubled": b, "ok": ok})
            if not ok:
                failures.append([n, d])
    return {"rows": rows, "failures": failures}


def chart_label(c1: complex, c2: complex) -> str:
    if c2 == 0:
        return "POINT"
    if c1 == 0:
        return "PROJECTIVE"
    return "SPHERE"


def check_moment_suite(ns=(2, 3, 4), d=0.3, seed=0) -> dict:
    rows, failures = [], []
    for n in ns:
        for i, c1 in enumerate(C_GRID):
            for j, c2 in enumerate(C_GRID):
                alpha, z = alpha_for_c(n, d, c1, c2)
                f = moment_fiber(n, d, z, alpha, seed=seed + 3 * i + j)
                want = chart_label(c1, c2)
                ok = f.classification == want and f.dimension == EXPECTED_DIM[want](n)
                rows.append({"n": n, "c1": c1, "c2": c2, "class": f.classification, "dim": f.dimension, "ok": ok})
                if not ok:
                    failures.append([n, c1, c2])
    return {"rows": rows, "failures": failures}


def check_trefoil_geometry_suite(ns=(2, 3), d=0.3, z=0.01, seed=0) -> dict:
    rows, failures = [], []
    for n in ns:
        paths = trefoil_paths(n, d, z)
        rep = trefoil_intersection_report(n, d, z, seed=seed)
        dims = [s["fiber_dimension"] for s in rep.strata]
        ok = len(paths.intersections) == 2 and dims == [0, 2 * n - 3]
        rows.append({"n": n, "intersections": len(paths.intersections), "fiber_dimensions": dims, "ok": ok})
        if not ok:
            failures.append(n)
    return {"rows": rows, "failures": failures}


def check_trefoil_homology_suite() -> dict:
    failures = []
    for n in range(2, 7):
        G = kr_trefoil(n)
        if G != kr_trefoil_list(n) or G[3 * n - 1].torsion != (n,) or G.torsion_degrees() != [3 * n - 1]:
            failures.append(n)
    return {"failures": failures}


def check_euler_suite(ns=(1, 2, 3, 4)) -> dict:
    failures = [[ex, n] for ex in EXAMPLES for n in ns if not check_conjecture_euler(ex, n)]
    return {"failures": failures}


def check_sampler_suite(seeds=10) -> dict:
    configs = {
        (1, 3): BipartiteConfig((1.2,), (-0.6,)),
        (2, 2): BipartiteConfig((1.0, -0.3 + 0.5j), (0.4j, -1.1)),
        (2, 3): BipartiteConfig((1.0, 0.5j), (-0.7, 0.3 - 0.4j)),
    }
    rows, failures = [], []
    for (m, n), tau in configs.items():
        tau = tau.recentered(n)
        for s in range(seeds):
            Y = sample_fiber(m, n, tau, seed=s)
            err = config_error(chi_pi(Y), tau, n)
            margin = newl_margin(Y)
            ok = err <= 1e-6 and margin > 1e-8
            rows.append({"m": m, "n": n, "seed": s, "error": err, "newl_margin": margin})
            if not ok:
                failures.append([m, n, s])
    return {"rows": rows, "failures": failures}


SUITES: dict[str, Callable[..., dict]] = {
    "skein": check_skein_suite,
    "markov": check_markov_suite,
    "unlink": check_unlink_suite,
    "oracle": check_oracle_suite,
    "schensted": check_schensted_suite,
    "breakings": check_breakings_suite,
    "spaltenstein": check_spaltenstein_suite,
    "rex": check_rex_suite,
    "gradient": check_gradient_suite,
    "moment": check_moment_suite,
    "trefoil-geometry": check_trefoil_geometry_suite,
    "trefoil-homology": check_trefoil_homology_suite,
    "conjecture-euler": check_euler_suite,
    "sampler": check_sampler_suite,
}

QUICK = {
    "skein": {"trials": 40},
    "markov": {"trials": 20},
    "oracle": {"trials": 10},
    "gradient": {"samples": 300},
    "moment": {"ns": (3,)},
    "sampler": {"seeds": 2},
}


def run_suite(name: str, quick: bool = False, **kwargs) -> CheckResult:
    fn = SUITES[name]
    params = dict(QUICK.get(name, {})) if quick else {}
    params.update({k: v for k, v in kwargs.items() if v is not None})
    t0 = time.perf_counter()
    detail = fn(**params)
    return CheckResult(name, not detail["failures"], detail, time.perf_counter() - t0)


def seed_for(seed: int, name: str) -> int:
    """Independent per-suite seeds derived from one master seed."""
    child = np.random.SeedSequence([seed, sorted(SUITES).index(name)])
    return int(child.generate_state(1)[0])
